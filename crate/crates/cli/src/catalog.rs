//! Named fixtures with their expected invariants.

use std::sync::Arc;

use fixtrace::bundles::BundleSelfMapPair;
use fixtrace::catalog as fx;
use fixtrace::cells::CellularMap;
use fixtrace::exactalg::IntMatrix;
use fixtrace::pi1::Pi1Presentation;
use fixtrace::reidemeister::FixedPointRecord;
use fixtrace::simplicial::SimplicialComplex;
use serde::Serialize;
use serde_json::Value;

use crate::doc::{ComplexDoc, ComplexRef, Labeled, MapBody, MapDoc, PairDoc, RecordDoc};
use crate::error::{CliError, CliResult};

/// What a catalog name produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Fixture {
    Complex(ComplexDoc),
    Map(Box<MapDoc>),
    Pair(Box<PairDoc>),
}

impl Fixture {
    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::Complex(_) => "complex",
            Fixture::Map(_) => "map",
            Fixture::Pair(_) => "pair",
        }
    }
}

/// Expected values and where they come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oracle {
    pub lefschetz: Option<i64>,
    pub nielsen: Option<usize>,
    pub reidemeister: Option<String>,
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    /// Name with example parameters, accepted by [`emit`].
    pub name: String,
    pub kind: &'static str,
    pub description: &'static str,
    pub oracle: Option<Oracle>,
}

fn entry(name: &str, kind: &'static str, description: &'static str, oracle: Option<Oracle>) -> Entry {
    Entry {
        name: name.into(),
        kind,
        description,
        oracle,
    }
}

fn oracle(l: i64, n: usize, r: Option<&str>, source: &'static str) -> Option<Oracle> {
    Some(Oracle {
        lefschetz: Some(l),
        nielsen: Some(n),
        reidemeister: r.map(String::from),
        source,
    })
}

pub fn entries() -> Vec<Entry> {
    vec![
        entry("point", "complex", "a single vertex", None),
        entry("circle(3)", "complex", "boundary of an n-gon", None),
        entry("figure_eight", "complex", "two triangles sharing a vertex", None),
        entry("torus7", "complex", "seven-vertex torus", None),
        entry("rp2", "complex", "six-vertex projective plane", None),
        entry("two_circles", "complex", "two disjoint triangles", None),
        entry("cw_torus", "complex", "one-vertex torus with one square", None),
        entry(
            "circle_degree_map(2)",
            "map",
            "z -> z^d on the triangle (circle_degree_map(n,d) on the n-gon)",
            oracle(-1, 1, None, "fixed points k/(d-1) of z^d, index sign(1-d)"),
        ),
        entry(
            "circle_reflection",
            "map",
            "reflection of the triangle fixing a vertex",
            oracle(2, 2, Some("1·[0] + 1·[1]"), "fixed vertex and opposite midpoint"),
        ),
        entry(
            "circle_rotation(3)",
            "map",
            "rotation of the n-gon by one step",
            oracle(0, 0, None, "no fixed points"),
        ),
        entry(
            "torus_linear([[2,1],[1,1]])",
            "map",
            "linear map of the one-vertex torus",
            oracle(-1, 1, None, "lattice points of (A-I)[0,1)^2, L = det(I-A)"),
        ),
        entry(
            "torus7_identity",
            "map",
            "identity of the seven-vertex torus",
            oracle(0, 0, None, "Euler characteristic"),
        ),
        entry(
            "figure_eight_undecided",
            "map",
            "figure-eight map a -> b, b -> aB with classes bounded search leaves undecided",
            None,
        ),
        entry(
            "double_cover_reflection",
            "pair",
            "double cover of the circle, reflection, fiber maps id/swap/swap, total reflection supplied",
            oracle(
                2,
                2,
                Some("1·[0] + 1·[1]"),
                "L(f) = 1·0 + 1·2 for the reflection of the double cover",
            ),
        ),
        entry(
            "double_cover_reflection_automatic",
            "pair",
            "the same pair with the total map built from the fiber maps",
            oracle(2, 2, Some("1·[0] + 1·[1]"), "as double_cover_reflection"),
        ),
        entry(
            "trivial_product(2,3)",
            "pair",
            "z^d1 on the base circle times z^d2 on the fiber circle",
            oracle(2, 2, None, "L = (1-d1)(1-d2), classes of the product lattice"),
        ),
        entry(
            "trivial_product_corrupted(2)",
            "pair",
            "trivial_product(d1,1) with the total map of trivial_product(d1,4): must fail",
            None,
        ),
        entry(
            "double_cover_degree_two",
            "pair",
            "degree-two map on the base of the double cover, constant fiber maps",
            oracle(-1, 1, None, "one base class of index -1"),
        ),
        entry(
            "fixed_point_free_rotation",
            "pair",
            "rotation of the base times identity fibers",
            oracle(0, 0, None, "no fixed points"),
        ),
        entry(
            "point_fiber_reflection",
            "pair",
            "point fibers over the triangle with the reflection",
            oracle(2, 2, None, "the base itself"),
        ),
        entry(
            "figure_eight_cover_identity",
            "pair",
            "identity of a two-sheeted bundle over the figure eight",
            oracle(-2, 1, None, "Euler characteristic of the total space"),
        ),
    ]
}

fn split(name: &str) -> CliResult<(&str, Vec<Value>)> {
    let Some(open) = name.find('(') else {
        return Ok((name, Vec::new()));
    };
    let inner = name[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| CliError::input(format!("unbalanced parameters in '{name}'")))?;
    let args = serde_json::from_str(&format!("[{inner}]"))
        .map_err(|e| CliError::input(format!("bad parameters in '{name}': {e}")))?;
    Ok((&name[..open], args))
}

fn int(name: &str, args: &[Value], i: usize) -> CliResult<i64> {
    args.get(i)
        .and_then(Value::as_i64)
        .ok_or_else(|| CliError::input(format!("'{name}' expects an integer parameter {}", i + 1)))
}

fn arity(name: &str, args: &[Value], n: &[usize]) -> CliResult<()> {
    if n.contains(&args.len()) {
        Ok(())
    } else {
        Err(CliError::input(format!(
            "'{name}' takes {n:?} parameters, got {}",
            args.len()
        )))
    }
}

fn polygon(name: &str, n: i64) -> CliResult<usize> {
    if n < 3 {
        return Err(CliError::input(format!("'{name}' needs at least 3 vertices")));
    }
    Ok(n as usize)
}

fn matrix(name: &str, args: &[Value]) -> CliResult<IntMatrix> {
    let rows: Vec<Vec<i64>> = args
        .first()
        .and_then(|v| serde_json::from_value(v.clone()).ok())
        .ok_or_else(|| CliError::input(format!("'{name}' expects an integer matrix")))?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(CliError::input(format!("'{name}' expects a 2x2 matrix")));
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn cw_torus() -> Labeled {
    let ids = vec![vec!["v".into()], vec!["x".into(), "y".into()], vec!["T".into()]];
    Labeled::from_cells(fx::cw_torus(), ids).expect("torus ids")
}

fn simplicial(k: SimplicialComplex) -> Labeled {
    Labeled::simplicial(Arc::new(k)).expect("catalog complexes have distinct ids")
}

/// Complexes that may be referred to by name inside documents.
pub fn complex(name: &str) -> CliResult<Labeled> {
    let (base, args) = split(name)?;
    let none = |k: SimplicialComplex| -> CliResult<Labeled> {
        arity(name, &args, &[0])?;
        Ok(simplicial(k))
    };
    match base {
        "point" => none(fx::point()),
        "figure_eight" => none(fx::figure_eight()),
        "torus7" => none(fx::torus7()),
        "rp2" => none(fx::rp2()),
        "two_circles" => none(fx::two_circles()),
        "cw_torus" => {
            arity(name, &args, &[0])?;
            Ok(cw_torus())
        }
        "circle" => {
            arity(name, &args, &[1])?;
            Ok(simplicial(fx::circle(polygon(name, int(name, &args, 0)?)?)))
        }
        _ => Err(CliError::input(format!("unknown complex '{name}'"))),
    }
}

fn records(k: &Labeled, records: Vec<FixedPointRecord>) -> CliResult<Vec<RecordDoc>> {
    let p = Pi1Presentation::new(k.cells.clone(), 0)?;
    Ok(records
        .into_iter()
        .map(|r| RecordDoc {
            label: r.label,
            index: r.index,
            witness: k.refs(&p.loop_of(&r.class_witness)),
        })
        .collect())
}

fn map_doc(k: &Labeled, f: &CellularMap, recs: Option<Vec<FixedPointRecord>>) -> CliResult<Fixture> {
    Ok(Fixture::Map(Box::new(MapDoc {
        complex: ComplexRef::Inline(k.to_doc()),
        body: MapBody::from_map(k, k, f),
        basepath: None,
        records: recs.map(|r| records(k, r)).transpose()?,
    })))
}

/// The figure-eight map `a ↦ b`, `b ↦ a b⁻¹`, collapsing both triangles
/// onto the wedge point: its trace keeps pairs of classes that bounded
/// search cannot separate or merge.
pub fn figure_eight_undecided() -> CliResult<CellularMap> {
    let k = fx::figure_eight();
    let edges: Vec<Vec<usize>> = k
        .simplices(1)
        .iter()
        .map(|e| match (e[0], e[1]) {
            (0, 1) => vec![0, 3, 4, 0],
            (0, 3) => vec![0, 1, 2, 0, 4, 3, 0],
            _ => vec![0],
        })
        .collect();
    Ok(fixtrace::simplicial::graph_map(&k, vec![0; 5], edges)?)
}

fn pair(p: fixtrace::Result<BundleSelfMapPair>) -> CliResult<Fixture> {
    Ok(Fixture::Pair(Box::new(PairDoc::from_pair(&p?))))
}

/// Builds the fixture called `name`.
pub fn emit(name: &str) -> CliResult<Fixture> {
    let (base, args) = split(name)?;
    if complex(name).is_ok() {
        return Ok(Fixture::Complex(complex(name)?.to_doc()));
    }
    let triangle = || simplicial(fx::circle(3));
    match base {
        "circle_degree_map" => {
            arity(name, &args, &[1, 2])?;
            let (n, d) = if args.len() == 1 {
                (3, int(name, &args, 0)?)
            } else {
                (polygon(name, int(name, &args, 0)?)?, int(name, &args, 1)?)
            };
            let k = simplicial(fx::circle(n));
            let recs = (d != 1).then(|| fx::circle_degree_records(d)).transpose()?;
            map_doc(&k, &fx::circle_degree_map(n, d)?, recs)
        }
        "circle_reflection" => {
            arity(name, &args, &[0])?;
            map_doc(
                &triangle(),
                &fx::circle_reflection().to_cellular(),
                Some(fx::circle_reflection_records()),
            )
        }
        "circle_rotation" => {
            arity(name, &args, &[1])?;
            let n = polygon(name, int(name, &args, 0)?)?;
            map_doc(
                &simplicial(fx::circle(n)),
                &fx::circle_rotation(n).to_cellular(),
                Some(Vec::new()),
            )
        }
        "torus_linear" => {
            arity(name, &args, &[1])?;
            let a = matrix(name, &args)?;
            let singular = a.sub(&IntMatrix::identity(2))?.determinant()? == 0.into();
            let recs = (!singular).then(|| fx::torus_linear_records(&a)).transpose()?;
            map_doc(&cw_torus(), &fx::torus_linear(&a)?, recs)
        }
        "torus7_identity" => {
            arity(name, &args, &[0])?;
            let k = simplicial(fx::torus7());
            map_doc(&k, &CellularMap::identity(k.cells.clone()), None)
        }
        "figure_eight_undecided" => {
            arity(name, &args, &[0])?;
            map_doc(&simplicial(fx::figure_eight()), &figure_eight_undecided()?, None)
        }
        "double_cover_reflection" => {
            arity(name, &args, &[0])?;
            pair(fx::double_cover_reflection())
        }
        "double_cover_reflection_automatic" => {
            arity(name, &args, &[0])?;
            pair(fx::double_cover_reflection_automatic())
        }
        "trivial_product" => {
            arity(name, &args, &[2])?;
            pair(fx::trivial_product(int(name, &args, 0)?, int(name, &args, 1)?))
        }
        "trivial_product_corrupted" => {
            arity(name, &args, &[1])?;
            pair(fx::trivial_product_corrupted(int(name, &args, 0)?))
        }
        "double_cover_degree_two" => {
            arity(name, &args, &[0])?;
            pair(fx::double_cover_degree_two())
        }
        "fixed_point_free_rotation" => {
            arity(name, &args, &[0])?;
            pair(fx::fixed_point_free_rotation())
        }
        "point_fiber_reflection" => {
            arity(name, &args, &[0])?;
            pair(fx::point_fiber_reflection())
        }
        "figure_eight_cover_identity" => {
            arity(name, &args, &[0])?;
            pair(fx::figure_eight_cover_identity())
        }
        _ => Err(CliError::input(format!("unknown catalog name '{name}'"))),
    }
}

/// One line per entry: name, kind, description and any expected values.
pub fn listing() -> String {
    let mut out = String::new();
    for e in entries() {
        out.push_str(&format!("{:<36} {:<8} {}", e.name, e.kind, e.description));
        if let Some(o) = &e.oracle {
            let mut parts = Vec::new();
            if let Some(l) = o.lefschetz {
                parts.push(format!("L={l}"));
            }
            if let Some(n) = o.nielsen {
                parts.push(format!("N={n}"));
            }
            if let Some(r) = &o.reidemeister {
                parts.push(format!("R={r}"));
            }
            out.push_str(&format!(" [{}; {}]", parts.join(" "), o.source));
        }
        out.push('\n');
    }
    out
}
