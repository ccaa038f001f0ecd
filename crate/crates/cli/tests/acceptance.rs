//! Acceptance checks. Run with `cargo test -p fixtrace-cli --test acceptance`;
//! prints one line per criterion and exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use fixtrace::bundles::{
    nielsen_additivity, verify_lefschetz_mult, verify_reidemeister_mult, BundleSelfMapPair, Verdict,
};
use fixtrace::catalog::*;
use fixtrace::cells::{CellComplex, CellularMap};
use fixtrace::exactalg::{
    hopf_chain_trace, lefschetz_from_homology, smith_normal_form, tensor_chain_map, ChainComplex, IntMatrix,
};
use fixtrace::grouprings::*;
use fixtrace::reidemeister::{
    reidemeister_trace, reidemeister_trace_geometric, vertex_witness, FixedPointRecord, ReidemeisterTrace,
};
use fixtrace::simplicial::{induced_chain_map, SimplicialComplex};
use fixtrace_cli::catalog::{emit, entries};
use fixtrace_cli::doc::{parse, render, resolve, MapDoc, PairDoc};
use fixtrace_cli::Report;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn fixtrace(args: &[&str]) -> Result<(i32, Report), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fixtrace"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let report: Report = parse(&stdout).map_err(|e| format!("{e}: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((out.status.code().unwrap_or(-1), report))
}

fn fixture_file(name: &str) -> Result<PathBuf, String> {
    let text = render(&emit(name).map_err(|e| e.to_string())?);
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("acceptance-{name}.json"));
    std::fs::write(&p, text).map_err(|e| e.to_string())?;
    Ok(p)
}

fn lefschetz(f: &CellularMap) -> BigInt {
    lefschetz_from_homology(&f.chain_map().unwrap()).unwrap()
}

fn augmentation(t: &ReidemeisterTrace) -> BigInt {
    t.components.iter().map(|c| augment(&c.trace)).sum()
}

fn abelian(g: &GroupElement) -> Vec<i64> {
    match g {
        GroupElement::Abelian(v) => v.clone(),
        other => panic!("expected an abelian element, got {other}"),
    }
}

/// Coefficients of a trace over ℤ keyed by residue mod `m`.
fn residues(s: &ShadowElement, m: i64) -> BTreeMap<i64, BigInt> {
    let mut out = BTreeMap::new();
    for (class, c) in s.terms() {
        let r = abelian(class.representative())[0].rem_euclid(m);
        *out.entry(r).or_insert_with(BigInt::zero) += c;
    }
    out
}

fn criterion_1() -> Outcome {
    let path = fixture_file("double_cover_reflection")?;
    let (code, r) = fixtrace(&["bundle-verify", "--theorem", "lefschetz", path.to_str().unwrap()])?;
    check!(code == 0, "exit code {code}");
    check!(r.verdict == fixtrace_cli::Verdict::Pass, "verdict {:?}", r.verdict);
    let t = r
        .tables
        .iter()
        .find(|t| t.name == "lefschetz")
        .ok_or("no lefschetz table")?;
    let index = t.columns.iter().position(|c| c == "index").unwrap();
    let fiber = t.columns.iter().position(|c| c == "fiber L").unwrap();
    let mut rows: Vec<(i64, i64)> = t
        .rows
        .iter()
        .map(|row| (row[index].parse().unwrap(), row[fiber].parse().unwrap()))
        .collect();
    rows.sort();
    check!(rows == [(1, 0), (1, 2)], "class table {rows:?}");
    let total: i64 = rows.iter().map(|(i, l)| i * l).sum();
    check!(total == 2, "sum of ind·L is {total}");
    check!(
        r.lhs.as_deref() == Some("2") && r.rhs.as_deref() == Some("2"),
        "lhs {:?} rhs {:?}",
        r.lhs,
        r.rhs
    );
    // the total space is a hexagon and the reflection fixes two of its vertices
    let pair = double_cover_reflection().unwrap();
    check!(lefschetz(pair.total_map()) == int(2), "L of the total map");
    Ok(format!("classes (ind, L) = {rows:?}, L(f) = 2"))
}

fn criterion_2() -> Outcome {
    let path = fixture_file("double_cover_reflection")?;
    let (code, r) = fixtrace(&["bundle-verify", "--theorem", "reidemeister", path.to_str().unwrap()])?;
    check!(code == 0, "exit code {code}");
    check!(r.lhs.is_some() && r.lhs == r.rhs, "lhs {:?} rhs {:?}", r.lhs, r.rhs);
    check!(r.lhs.as_deref() == Some("1·[0] + 1·[1]"), "lhs {:?}", r.lhs);

    let pair = double_cover_reflection().unwrap();
    let ctx = pair.base_context();
    check!(
        *ctx.group() == GroupClass::FreeAbelian(1),
        "base group {:?}",
        ctx.group()
    );
    let phi = ctx.endo().apply(&GroupElement::Abelian(vec![1]));
    check!(phi == GroupElement::Abelian(vec![-1]), "φ(1) = {phi}");

    // z ↦ z̄ fixes ±1; the upper arc from 1 to -1 and its image close up to
    // one full turn, so the two points lie in classes 0 and 1 of ℤ/(1-φ) = ℤ/2,
    // each with index sign(1 - (-1)) = 1.
    let index = (1 - (-1i64)).signum();
    let oracle: BTreeMap<i64, BigInt> = [(0, int(index)), (1, int(index))].into();
    let lhs = verify_reidemeister_mult(&pair).unwrap();
    check!(lhs.verdict == Verdict::Pass, "library verdict {:?}", lhs.verdict);
    let base = residues(pair.base_reidemeister(), 2);
    check!(base == oracle, "base trace {base:?}, oracle {oracle:?}");
    let direct = reidemeister_trace(&circle_reflection().to_cellular(), DEFAULT_DEPTH).unwrap();
    let direct = residues(&direct.components[0].trace, 2);
    check!(direct == oracle, "trace of z ↦ z̄ {direct:?}");

    // total space: the fixed vertices of the total map give the geometric trace
    let total = pair.total_trace().unwrap();
    let c = &total.components[0];
    let f = pair.total_map();
    let records: Vec<FixedPointRecord> = (0..f.source().vertex_count())
        .filter(|&v| f.vertex_image(v) == v)
        .map(|v| FixedPointRecord {
            label: f.source().vertex_label(v).to_string(),
            index: 1,
            class_witness: vertex_witness(f, &c.presentation, &c.basepath, v).unwrap(),
        })
        .collect();
    check!(records.len() == 2, "{} fixed vertices", records.len());
    let geo = reidemeister_trace_geometric(&records, &c.context).unwrap();
    check!(
        c.context.compare_shadows(&geo, &c.trace) == Comparison::Equal,
        "geometric {geo} vs chain {}",
        c.trace
    );
    Ok(format!("R = {} over (ℤ, φ = -1), fixed-point oracle agrees", lhs.lhs))
}

fn criterion_3() -> Outcome {
    let mut seen = Vec::new();
    for d in [-3i64, -2, -1, 0, 2, 3, 4] {
        let m = (1 - d).abs();
        // fixed points of z ↦ z^d are the (d-1)-th roots of unity, one per
        // residue mod |1-d|, each of index sign(1-d)
        let oracle: BTreeMap<i64, BigInt> = (0..m).map(|r| (r, int((1 - d).signum()))).collect();
        for n in [3, 5] {
            let f = circle_degree_map(n, d).unwrap();
            let t = reidemeister_trace(&f, DEFAULT_DEPTH).unwrap();
            check!(
                t.components.len() == 1 && t.is_determinate(),
                "d = {d}: trace not decided"
            );
            let r = &t.components[0].trace;
            check!(
                r.terms().len() as i64 == m,
                "d = {d}, n = {n}: {} classes",
                r.terms().len()
            );
            for (_, c) in r.terms() {
                check!(*c == int((1 - d).signum()), "d = {d}: coefficient {c}");
            }
            let got = residues(r, m);
            check!(got == oracle, "d = {d}, n = {n}: {got:?} vs {oracle:?}");
            check!(augment(r) == int(1 - d), "d = {d}: augmentation {}", augment(r));
            check!(lefschetz(&f) == int(1 - d), "d = {d}: L = {}", lefschetz(&f));
        }
        seen.push(format!("{d}:{m}"));
    }
    Ok(format!("degree:classes {}", seen.join(" ")))
}

/// Canonical key of `x` in ℤ²/(I-A)ℤ²: `adj(I-A)·x mod det`.
fn lattice_key(m: &[[i64; 2]; 2], det: i64, x: &[i64]) -> (i64, i64) {
    let adj = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
    let k = |r: usize| (adj[r][0] * x[0] + adj[r][1] * x[1]).rem_euclid(det.abs());
    (k(0), k(1))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut done = 0;
    let mut dets = Vec::new();
    while done < 20 {
        let a: [[i64; 2]; 2] = [
            [rng.gen_range(-2..=2), rng.gen_range(-2..=2)],
            [rng.gen_range(-2..=2), rng.gen_range(-2..=2)],
        ];
        let m = [[1 - a[0][0], -a[0][1]], [-a[1][0], 1 - a[1][1]]];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det == 0 {
            continue;
        }
        let f = torus_linear(&IntMatrix::from_rows(&a)).unwrap();
        let l = lefschetz(&f);
        check!(l == int(det), "{a:?}: L = {l}, det(I-A) = {det}");
        let t = reidemeister_trace(&f, DEFAULT_DEPTH).unwrap();
        check!(t.is_determinate(), "{a:?}: trace not decided");
        let r = &t.components[0].trace;
        let n = nielsen(r).map_err(|e| e.to_string())?;
        check!(n as i64 == det.abs(), "{a:?}: N = {n}, |det| = {}", det.abs());
        // every class of ℤ²/(I-A)ℤ² by enumerating a box of lattice points
        let b = det.abs() + 1;
        let all: BTreeSet<(i64, i64)> = (-b..=b)
            .flat_map(|i| (-b..=b).map(move |j| (i, j)))
            .map(|x| lattice_key(&m, det, &[x.0, x.1]))
            .collect();
        check!(
            all.len() as i64 == det.abs(),
            "{a:?}: oracle found {} classes",
            all.len()
        );
        let mut keys = BTreeSet::new();
        for (class, c) in r.terms() {
            check!(*c == int(det.signum()), "{a:?}: coefficient {c}");
            keys.insert(lattice_key(&m, det, &abelian(class.representative())));
        }
        check!(keys == all, "{a:?}: classes {keys:?} vs lattice {all:?}");
        dets.push(det);
        done += 1;
    }
    Ok(format!("20 matrices, det(I-A) in {dets:?}"))
}

fn catalog_complexes() -> Vec<(&'static str, Arc<SimplicialComplex>)> {
    vec![
        ("point", Arc::new(point())),
        ("circle", Arc::new(circle(4))),
        ("figure eight", Arc::new(figure_eight())),
        ("torus", Arc::new(torus7())),
        ("projective plane", Arc::new(rp2())),
        ("two circles", Arc::new(two_circles())),
    ]
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut count = 0;
    for (name, k) in catalog_complexes() {
        for _ in 0..20 {
            let f = random_simplicial_map(&k, &k, &mut rng);
            let m = induced_chain_map(&f);
            let (h, l) = (hopf_chain_trace(&m).unwrap(), lefschetz_from_homology(&m).unwrap());
            check!(h == l, "{name} {:?}: chain {h}, homology {l}", f.vertex_images());
            count += 1;
        }
    }
    Ok(format!("{count} random self-maps"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let small: Vec<Arc<SimplicialComplex>> = vec![
        Arc::new(point()),
        Arc::new(circle(3)),
        Arc::new(circle(4)),
        Arc::new(figure_eight()),
        Arc::new(two_circles()),
        Arc::new(rp2()),
    ];
    let mut count = 0;
    while count < 50 {
        let a = &small[rng.gen_range(0..small.len())];
        let b = &small[rng.gen_range(0..small.len() - 1)];
        let f = induced_chain_map(&random_simplicial_map(a, a, &mut rng));
        let g = induced_chain_map(&random_simplicial_map(b, b, &mut rng));
        let fg = tensor_chain_map(&f, &g).unwrap();
        let want = lefschetz_from_homology(&f).unwrap() * lefschetz_from_homology(&g).unwrap();
        let got = lefschetz_from_homology(&fg).unwrap();
        check!(got == want, "L(f⊗g) = {got}, L(f)L(g) = {want}");
        check!(hopf_chain_trace(&fg).unwrap() == want, "chain trace of f⊗g");
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn catalog_pairs() -> Result<Vec<(String, BundleSelfMapPair)>, String> {
    let mut out = Vec::new();
    for e in entries().into_iter().filter(|e| e.kind == "pair") {
        let doc: PairDoc = parse(&render(&emit(&e.name).map_err(|x| x.to_string())?)).map_err(|x| x.to_string())?;
        let p = doc
            .to_pair(DEFAULT_DEPTH, &fixtrace_cli::catalog::complex)
            .map_err(|x| format!("{}: {x}", e.name))?;
        out.push((e.name, p.pair));
    }
    for (d1, d2) in [(-1, 2), (3, -1), (0, 2), (2, 2), (-2, 3)] {
        out.push((format!("trivial_product({d1},{d2})"), trivial_product(d1, d2).unwrap()));
    }
    Ok(out)
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for e in entries().into_iter().filter(|e| e.kind == "map") {
        let doc: MapDoc = parse(&render(&emit(&e.name).unwrap())).unwrap();
        let k = resolve(&doc.complex, &fixtrace_cli::catalog::complex).unwrap();
        let f = doc.body.to_map(&k, &k).unwrap();
        let t = reidemeister_trace(&f, DEFAULT_DEPTH).map_err(|x| format!("{}: {x}", e.name))?;
        check!(
            augmentation(&t) == lefschetz(&f),
            "{}: augmentation {} vs L {}",
            e.name,
            augmentation(&t),
            lefschetz(&f)
        );
        count += 1;
    }
    let mut maps: Vec<(String, CellularMap)> = Vec::new();
    for d in [-3, -2, -1, 0, 1, 2, 3, 4] {
        maps.push((format!("degree {d}"), circle_degree_map(4, d).unwrap()));
    }
    maps.push(("rotation".into(), circle_rotation(5).to_cellular()));
    for a in [[[2, 1], [1, 1]], [[0, 1], [-1, 0]], [[1, 1], [0, 1]], [[-1, 2], [1, 0]]] {
        maps.push((format!("torus {a:?}"), torus_linear(&IntMatrix::from_rows(&a)).unwrap()));
    }
    for (name, k) in catalog_complexes() {
        maps.push((format!("{name} seeded"), seeded_self_map(&k, 17).to_cellular()));
    }
    for (name, f) in &maps {
        let t = reidemeister_trace(f, DEFAULT_DEPTH).map_err(|x| format!("{name}: {x}"))?;
        check!(
            augmentation(&t) == lefschetz(f),
            "{name}: augmentation {} vs L {}",
            augmentation(&t),
            lefschetz(f)
        );
        count += 1;
    }
    let mut skipped = Vec::new();
    for (name, p) in catalog_pairs()? {
        check!(
            augment(p.base_reidemeister()) == lefschetz(p.base_map()),
            "{name}: base augmentation"
        );
        count += 1;
        let t = p.total_trace().map_err(|x| format!("{name}: {x}"))?;
        check!(
            augmentation(&t) == lefschetz(p.total_map()),
            "{name}: total augmentation"
        );
        count += 1;
        for c in p.base_twisted_classes(DEFAULT_DEPTH).classes {
            // a total map that does not fit the fiber maps has no refined traces
            let Ok(refined) = p.refined_reidemeister(&c, &t) else {
                skipped.push(name.clone());
                break;
            };
            let a: BigInt = refined.parts.iter().map(|(_, s)| augment(s)).sum();
            check!(
                a == p.refined_lefschetz(&c).unwrap(),
                "{name}: refined augmentation at {}",
                c.class
            );
            count += 1;
        }
    }
    check!(
        skipped == ["trivial_product_corrupted(2)"],
        "no total trace for {skipped:?}"
    );
    Ok(format!(
        "{count} traces; refined traces of {} rejected",
        skipped.join(", ")
    ))
}

fn random_group_ring(g: &GroupClass, n: usize, rng: &mut ChaCha8Rng) -> GroupRingMatrix {
    let data = (0..n * n)
        .map(|_| {
            let terms = (0..rng.gen_range(0..3)).map(|_| {
                let x = match g {
                    GroupClass::FreeAbelian(k) => {
                        GroupElement::Abelian((0..*k).map(|_| rng.gen_range(-2..=2)).collect())
                    }
                    GroupClass::Finite(t) => GroupElement::Finite(rng.gen_range(0..t.order())),
                    GroupClass::Free(_) => unreachable!(),
                };
                (int(rng.gen_range(-2..=2)), x)
            });
            GroupRingElement::from_terms(terms.collect::<Vec<_>>())
        })
        .collect();
    GroupRingMatrix::from_entries(n, n, data).unwrap()
}

fn random_endo(g: &GroupClass, rng: &mut ChaCha8Rng) -> GroupHom {
    match g {
        GroupClass::FreeAbelian(k) => {
            let rows: Vec<Vec<i64>> = (0..*k)
                .map(|_| (0..*k).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            GroupHom::from_matrix(&IntMatrix::from_rows(&rows)).unwrap()
        }
        GroupClass::Finite(t) => {
            let a = rng.gen_range(0..t.order());
            let images = (0..t.order())
                .map(|x| GroupElement::Finite(t.mul(t.mul(a, x), t.inv(a))))
                .collect();
            GroupHom::endo(g.clone(), images).unwrap()
        }
        GroupClass::Free(_) => unreachable!(),
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let groups = [
        GroupClass::FreeAbelian(1),
        GroupClass::FreeAbelian(2),
        GroupClass::FreeAbelian(3),
        GroupClass::Finite(FiniteGroup::cyclic(6)),
        GroupClass::Finite(FiniteGroup::dihedral(3)),
        GroupClass::Finite(FiniteGroup::dihedral(4)),
    ];
    let mut count = 0;
    for (which, g) in groups.iter().enumerate() {
        for i in 0..20 {
            let phi = match g {
                // power maps on the cyclic group, conjugations otherwise
                GroupClass::Finite(_) if which == 3 && i % 2 == 0 => {
                    let k = rng.gen_range(0..6);
                    GroupHom::endo(g.clone(), (0..6).map(|x| GroupElement::Finite(x * k % 6)).collect()).unwrap()
                }
                _ => random_endo(g, &mut rng),
            };
            let ctx = TwistedConjugacy::new(phi).unwrap();
            let n = rng.gen_range(1..=3);
            let a = random_group_ring(g, n, &mut rng);
            let b = random_group_ring(g, n, &mut rng);
            let left = ctx.hs_trace(&a.mul(&b, g).unwrap()).unwrap();
            let right = ctx.hs_trace(&b.mul(&a.map(ctx.endo()), g).unwrap()).unwrap();
            check!(
                ctx.compare_shadows(&left, &right) == Comparison::Equal,
                "{g:?}: {left} vs {right}"
            );
            check!(augment(&left) == augment(&right), "{g:?}: augmentations differ");
            count += 1;
        }
    }
    Ok(format!("{count} matrix pairs over ℤ, ℤ², ℤ³, C6, D3, D4"))
}

fn euler(k: &CellComplex) -> i64 {
    (0..=k.dim())
        .map(|d| {
            if d % 2 == 0 {
                k.count(d) as i64
            } else {
                -(k.count(d) as i64)
            }
        })
        .sum()
}

fn criterion_9() -> Outcome {
    let torus = identity_pair(trivial_product(1, 1).unwrap().bundle().clone()).unwrap();
    let mut lines = Vec::new();
    for (name, parts) in [
        ("trivial_product", vec![torus]),
        ("two-component base", two_component_base().unwrap()),
    ] {
        let mut chi_e = 0;
        let mut sum = 0;
        for p in &parts {
            check!(
                p.base_map() == &CellularMap::identity(p.bundle().base().complex().clone()),
                "{name}: not an identity pair"
            );
            chi_e += euler(p.total_space().complex());
            let chi_c = euler(p.bundle().base().complex());
            let chi_f = euler(p.bundle().fiber_cells(0));
            sum += chi_c * chi_f;
            let r = verify_lefschetz_mult(p).unwrap();
            check!(
                r.verdict == Verdict::Pass,
                "{name}: Lefschetz product formula {:?}",
                r.verdict
            );
            check!(
                r.lhs == (chi_c * chi_f).to_string(),
                "{name}: L(id) = {} vs χ(C)χ(F) = {}",
                r.lhs,
                chi_c * chi_f
            );
        }
        check!(chi_e == sum, "{name}: χ(E) = {chi_e}, Σ χ(C)χ(F) = {sum}");
        lines.push(format!("{name}: χ(E) = {chi_e}"));
    }
    Ok(lines.join(", "))
}

fn criterion_10() -> Outcome {
    let mut decisive = Vec::new();
    for (name, p) in catalog_pairs()? {
        let r = verify_reidemeister_mult(&p).unwrap();
        if r.verdict != Verdict::Pass {
            continue;
        }
        let n = nielsen_additivity(&p).map_err(|e| format!("{name}: {e}"))?;
        let direct = p.total_trace().unwrap().nielsen().map_err(|e| e.to_string())?;
        let sum: usize = n.per_class.iter().map(|c| c.1).sum();
        check!(n.total == direct, "{name}: N(f) = {} vs trace count {direct}", n.total);
        check!(
            n.holds && n.sum == sum && sum == direct,
            "{name}: N(f) = {direct}, Σ c = {sum}"
        );
        if name == "fixed_point_free_rotation" {
            check!(
                direct == 0 && n.per_class.is_empty(),
                "rotation: N = {direct}, {} classes",
                n.per_class.len()
            );
        }
        decisive.push(format!("{name}={direct}"));
    }
    check!(
        decisive.iter().any(|s| s == "fixed_point_free_rotation=0"),
        "rotation fixture not decided"
    );
    Ok(decisive.join(" "))
}

fn random_element(g: &GroupClass, rng: &mut ChaCha8Rng) -> GroupElement {
    match g {
        GroupClass::FreeAbelian(n) => GroupElement::Abelian((0..*n).map(|_| rng.gen_range(-4..=4)).collect()),
        GroupClass::Free(n) => {
            let n = *n as i32;
            let w: Vec<Letter> = (0..rng.gen_range(0..6))
                .map(|_| rng.gen_range(1..=n) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            GroupElement::Word(reduce_word(&w))
        }
        GroupClass::Finite(t) => GroupElement::Finite(rng.gen_range(0..t.order())),
    }
}

fn check_chain_complex(name: &str, c: &ChainComplex) -> Result<(), String> {
    for i in 0..c.len() {
        let d = c.boundary(i);
        if i + 1 < c.len() {
            check!(
                d.mul(&c.boundary(i + 1)).unwrap().is_zero(),
                "{name}: ∂∂ ≠ 0 in degree {i}"
            );
        }
        let s = smith_normal_form(&d);
        check!(
            s.u.mul(&d).unwrap().mul(&s.v).unwrap() == s.s,
            "{name}: U∂V ≠ S in degree {i}"
        );
        check!(
            s.u.mul(&s.u_inv).unwrap() == IntMatrix::identity(d.rows()),
            "{name}: U not invertible"
        );
        check!(
            s.v.mul(&s.v_inv).unwrap() == IntMatrix::identity(d.cols()),
            "{name}: V not invertible"
        );
        let f = s.invariant_factors();
        check!(f.iter().all(|x| x.is_positive()), "{name}: invariant factors {f:?}");
        check!(
            f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
            "{name}: divisibility {f:?}"
        );
        check!(f.len() == d.rank(), "{name}: rank");
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // canonicalization on orbits
    let free = GroupClass::Free(2);
    let d4 = FiniteGroup::dihedral(4);
    let conj = |a: usize| {
        let images = (0..d4.order())
            .map(|x| GroupElement::Finite(d4.mul(d4.mul(a, x), d4.inv(a))))
            .collect();
        GroupHom::endo(GroupClass::Finite(d4.clone()), images).unwrap()
    };
    let c6 = GroupClass::Finite(FiniteGroup::cyclic(6));
    let times =
        |k: usize| GroupHom::endo(c6.clone(), (0..6).map(|x| GroupElement::Finite(x * k % 6)).collect()).unwrap();
    let mut endos = vec![
        GroupHom::identity(free.clone()),
        GroupHom::endo(free.clone(), vec![free.identity(), free.identity()]).unwrap(),
        conj(1),
        conj(5),
        times(5),
        times(3),
    ];
    for m in [
        [[2, 1], [1, 1]],
        [[0, 1], [-1, 0]],
        [[3, 0], [0, -1]],
        [[1, 2], [0, 1]],
        [[-1, 0], [0, -1]],
    ] {
        endos.push(GroupHom::from_matrix(&IntMatrix::from_rows(&m)).unwrap());
    }
    let cases = endos.len();
    for phi in endos {
        let ctx = TwistedConjugacy::new(phi).unwrap();
        let g = ctx.group().clone();
        for _ in 0..4 {
            let x = random_element(&g, &mut rng);
            let class = ctx.class_of(&x);
            for _ in 0..50 {
                let y = ctx.act(&random_element(&g, &mut rng), &x);
                check!(ctx.class_of(&y) == class, "class of {y} differs from class of {x}");
                check!(ctx.compare(&x, &y) == Comparison::Equal, "{x} and {y} not identified");
            }
        }
    }

    // representative independence of refined L
    let mut classes = 0;
    for (name, pair) in [
        ("double cover", double_cover_reflection().unwrap()),
        ("degree two cover", double_cover_degree_two().unwrap()),
        ("trivial (-1, 2)", trivial_product(-1, 2).unwrap()),
        ("trivial (3, -2)", trivial_product(3, -2).unwrap()),
    ] {
        let ctx = pair.base_context();
        let g = ctx.group();
        let vertices = pair.bundle().base().vertex_count();
        for class in pair.base_twisted_classes(DEFAULT_DEPTH).classes {
            let value = pair.refined_lefschetz(&class).unwrap();
            for i in 0..10 {
                let h = g.pow(&g.generator(0), i as i64 - 5);
                let u = ctx.act(&h, class.class.representative());
                let rep = pair.representative_at(&u, i % vertices).unwrap();
                check!(rep.class == class.class, "{name}: representative left its class");
                let v = pair.refined_lefschetz(&rep).unwrap();
                check!(v == value, "{name}: refined L {v} vs {value} at {}", class.class);
            }
            classes += 1;
        }
    }

    // Smith normal form and ∂∂ = 0 on every fixture
    let mut complexes = 0;
    for (name, k) in catalog_complexes() {
        check_chain_complex(name, &k.chain_complex())?;
        check_chain_complex(name, &k.cells().chain_complex().unwrap())?;
        complexes += 1;
    }
    check_chain_complex("cw torus", &cw_torus().chain_complex().unwrap())?;
    complexes += 1;
    for (name, p) in catalog_pairs()? {
        check_chain_complex(&name, &p.total_space().complex().chain_complex().unwrap())?;
        check_chain_complex(&name, &p.bundle().base().complex().chain_complex().unwrap())?;
        complexes += 1;
    }
    Ok(format!(
        "{cases} orbit cases × 4 × 50, {classes} classes × 10 representatives, {complexes} fixtures"
    ))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let mut failed = 0;
    for (n, f) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({ms} ms) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({ms} ms) {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1} s",
        11 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
