use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::spaces::{circle, cw_torus};
use crate::cells::{CellularMap, EdgePath, ImageTerm, Step};
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::grouprings::GroupElement;
use crate::reidemeister::FixedPointRecord;
use crate::simplicial::{graph_map, SimplicialMap};

/// `z ↦ z^d` on the `n`-gon: vertex `v` goes to `d·v` and each edge winds
/// `|d|` steps.
pub fn circle_degree_map(n: usize, d: i64) -> Result<CellularMap> {
    let k = circle(n);
    let nn = n as i64;
    let walk = |from: i64, steps: i64| -> Vec<usize> {
        (0..=steps.abs())
            .map(|s| (from + s * steps.signum()).rem_euclid(nn) as usize)
            .collect()
    };
    let images = (0..nn).map(|v| (d * v).rem_euclid(nn) as usize).collect();
    let paths = k
        .simplices(1)
        .iter()
        .map(|e| {
            let (a, b) = (e[0] as i64, e[1] as i64);
            if b == a + 1 {
                walk(d * a, d)
            } else {
                walk(0, -d)
            }
        })
        .collect();
    graph_map(&k, images, paths)
}

/// Reflection of the triangle fixing vertex 0.
pub fn circle_reflection() -> SimplicialMap {
    SimplicialMap::endo(Arc::new(circle(3)), vec![0, 2, 1]).expect("reflection")
}

/// Rotation of the `n`-gon by one step: no fixed points.
pub fn circle_rotation(n: usize) -> SimplicialMap {
    SimplicialMap::endo(Arc::new(circle(n)), (0..n).map(|v| (v + 1) % n).collect()).expect("rotation")
}

/// Fixed points of `θ ↦ dθ` on `ℝ/ℤ`: `θ = k/(d−1)`, each of index
/// `sign(1−d)`, with witness `−k`.
pub fn circle_degree_records(d: i64) -> Result<Vec<FixedPointRecord>> {
    if d == 1 {
        return Err(Error::Unsupported("the identity has non-isolated fixed points".into()));
    }
    let m = (d - 1).abs();
    Ok((0..m)
        .map(|k| FixedPointRecord {
            label: format!("θ={k}/{}", d - 1),
            index: (1 - d).signum(),
            class_witness: GroupElement::Abelian(vec![-k]),
        })
        .collect())
}

/// Records for the reflection: the fixed vertex and the midpoint of the
/// opposite edge.
pub fn circle_reflection_records() -> Vec<FixedPointRecord> {
    vec![
        FixedPointRecord {
            label: "0".into(),
            index: 1,
            class_witness: GroupElement::Abelian(vec![0]),
        },
        FixedPointRecord {
            label: "mid(1,2)".into(),
            index: 1,
            class_witness: GroupElement::Abelian(vec![1]),
        },
    ]
}

fn entry(a: &IntMatrix, i: usize, j: usize) -> Result<i64> {
    a[(i, j)]
        .to_i64()
        .ok_or_else(|| Error::Unsupported("matrix entry too large".into()))
}

/// Edge path `x^i y^j` on the one-vertex torus.
fn lattice_path(i: i64, j: i64) -> EdgePath {
    let mut p = EdgePath::constant(0);
    for (edge, k) in [(0, i), (1, j)] {
        for _ in 0..k.abs() {
            p.push(Step { edge, forward: k > 0 });
        }
    }
    p
}

/// `[n]_x = 1 + x + … + x^{n−1}`, negated and shifted for negative `n`.
fn q_integer(n: i64) -> Vec<(i64, i64)> {
    if n >= 0 {
        (0..n).map(|k| (k, 1)).collect()
    } else {
        (n..0).map(|k| (k, -1)).collect()
    }
}

/// The linear map `A` on the one-vertex torus: `x ↦ x^a y^c`, `y ↦ x^b y^d`
/// for `A = [[a, b], [c, d]]`, with the square sent to the lattice chain
/// filling the image parallelogram.
pub fn torus_linear(a: &IntMatrix) -> Result<CellularMap> {
    if a.shape() != (2, 2) {
        return Err(Error::Shape("torus maps need a 2x2 matrix".into()));
    }
    let (ea, eb, ec, ed) = (entry(a, 0, 0)?, entry(a, 0, 1)?, entry(a, 1, 0)?, entry(a, 1, 1)?);
    let k = cw_torus();
    // numerator (1 − x^b y^d)[a]_x + (x^a y^c − 1)[b]_x, keyed by (x, y) exponents
    let mut num: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    let mut add = |i: i64, j: i64, c: i64| *num.entry((i, j)).or_insert(0) += c;
    for (i, c) in q_integer(ea) {
        add(i, 0, c);
        add(i + eb, ed, -c);
    }
    for (i, c) in q_integer(eb) {
        add(i + ea, ec, c);
        add(i, 0, -c);
    }
    let mut by_x: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for (&(i, j), &c) in &num {
        if c != 0 {
            by_x.entry(i).or_default().push((j, c));
        }
    }
    let mut terms = Vec::new();
    for (i, col) in by_x {
        let (lo, hi) = (col.first().expect("nonempty").0, col.last().expect("nonempty").0);
        let mut acc = 0;
        for j in lo..=hi {
            acc += col.iter().find(|t| t.0 == j).map_or(0, |t| t.1);
            if j < hi && acc != 0 {
                terms.push(ImageTerm {
                    coeff: acc,
                    cell: 0,
                    path: lattice_path(i, j),
                });
            }
        }
        if acc != 0 {
            return Err(Error::NotConstructible("square image is not divisible by 1 − y".into()));
        }
    }
    CellularMap::new(
        k.clone(),
        k,
        vec![0],
        vec![lattice_path(ea, ec), lattice_path(eb, ed)],
        vec![vec![terms]],
    )
}

/// Fixed points of `x ↦ Ax` on `ℝ²/ℤ²`: the points `x ∈ [0,1)²` with
/// `(A − I)x = m ∈ ℤ²`, each of index `sign det(I − A)`, with witness `−m`.
pub fn torus_linear_records(a: &IntMatrix) -> Result<Vec<FixedPointRecord>> {
    let m = a.sub(&IntMatrix::identity(2))?;
    let det = m.determinant()?;
    if det.is_zero() {
        return Err(Error::Unsupported("fixed points are not isolated".into()));
    }
    let sign = if det.is_positive() { 1 } else { -1 };
    let g = |i: usize, j: usize| m[(i, j)].to_i64().expect("small matrix");
    let (p, q, r, s) = (g(0, 0), g(0, 1), g(1, 0), g(1, 1));
    let corners = [(0, 0), (p, r), (q, s), (p + q, r + s)];
    let (x0, x1) = (
        corners.iter().map(|c| c.0).min().unwrap(),
        corners.iter().map(|c| c.0).max().unwrap(),
    );
    let (y0, y1) = (
        corners.iter().map(|c| c.1).min().unwrap(),
        corners.iter().map(|c| c.1).max().unwrap(),
    );
    let d = BigRational::from_integer(det.clone());
    let unit = |v: &BigRational| !v.is_negative() && *v < BigRational::one();
    let mut out = Vec::new();
    for mx in x0..=x1 {
        for my in y0..=y1 {
            let u = BigRational::from_integer(BigInt::from(s * mx - q * my)) / &d;
            let v = BigRational::from_integer(BigInt::from(p * my - r * mx)) / &d;
            if unit(&u) && unit(&v) {
                out.push(FixedPointRecord {
                    label: format!("({u},{v})"),
                    index: sign,
                    class_witness: GroupElement::Abelian(vec![-mx, -my]),
                });
            }
        }
    }
    Ok(out)
}
