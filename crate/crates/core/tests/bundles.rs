use std::sync::Arc;

use fixtrace::bundles::*;
use fixtrace::catalog::*;
use fixtrace::cells::EdgePath;
use fixtrace::exactalg::{homology, same_on_homology, ChainMap};
use fixtrace::grouprings::{augment, GroupElement};
use fixtrace::pi1::Pi1Presentation;
use fixtrace::reidemeister::{reidemeister_trace_geometric, vertex_witness, FixedPointRecord};
use fixtrace::simplicial::{induced_chain_map, SimplicialMap};
use num_bigint::BigInt;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn example_lefschetz_table() {
    let pair = double_cover_reflection().unwrap();
    let r = verify_lefschetz_mult(&pair).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.rhs, "2");
    let mut table: Vec<(BigInt, BigInt)> = r
        .rows
        .iter()
        .map(|row| (row.index.clone(), row.fiber_lefschetz.clone().unwrap()))
        .collect();
    table.sort();
    assert_eq!(table, vec![(int(1), int(0)), (int(1), int(2))]);
}

#[test]
fn example_reidemeister_and_nielsen() {
    let pair = double_cover_reflection().unwrap();
    let r = verify_reidemeister_mult(&pair).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    assert_eq!(r.lhs, "1·[0] + 1·[1]");
    assert_eq!(r.rhs, r.lhs);
    let n = nielsen_additivity(&pair).unwrap();
    assert!(n.holds);
    assert_eq!(n.total, 2);
    let mut per: Vec<usize> = n.per_class.iter().map(|c| c.1).collect();
    per.sort();
    assert_eq!(per, vec![0, 2]);
}

#[test]
fn example_total_trace_matches_fixed_points() {
    let pair = double_cover_reflection().unwrap();
    let total = pair.total_trace().unwrap();
    assert_eq!(total.components.len(), 1);
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
    assert_eq!(records.len(), 2);
    let geo = reidemeister_trace_geometric(&records, &c.context).unwrap();
    assert_eq!(geo, c.trace);
}

#[test]
fn supplied_total_map_agrees_with_constructed() {
    let supplied = double_cover_reflection().unwrap();
    let auto = double_cover_reflection_automatic().unwrap();
    assert_eq!(supplied.total_map(), auto.total_map());
    assert!(supplied.total_map_supplied());
    assert!(!auto.total_map_supplied());
}

#[test]
fn corrupted_fixture_fails() {
    let pair = trivial_product_corrupted(2).unwrap();
    let l = verify_lefschetz_mult(&pair).unwrap();
    assert_eq!(l.verdict, Verdict::Fail);
    assert_eq!((l.lhs.as_str(), l.rhs.as_str()), ("0", "3"));
    assert_eq!(verify_reidemeister_mult(&pair).unwrap().verdict, Verdict::Fail);
}

#[test]
fn supplied_map_must_restrict_to_fiber_maps() {
    let p = double_cover_reflection().unwrap();
    let f = p.bundle().fiber(0).clone();
    let cells = p.bundle().fiber_cells(0).clone();
    let id = SimplicialMap::identity(f.clone()).cellular(cells.clone(), cells.clone());
    let swap = SimplicialMap::endo(f, vec![1, 0])
        .unwrap()
        .cellular(cells.clone(), cells);
    let r = BundleSelfMapPair::new(
        p.bundle().clone(),
        p.base_map().clone(),
        vec![swap, id.clone(), id],
        Some(p.total_map().clone()),
        8,
    );
    assert!(r.is_err());
}

#[test]
fn transport_examples() {
    let b = double_cover();
    let base = b.base();
    let empty = EdgePath::constant(0);
    assert_eq!(
        b.transport(&empty).unwrap(),
        SimplicialMap::identity(b.fiber(0).clone())
    );
    let lp = base.path(0, &[(0, true), (1, true), (2, false)]).unwrap();
    assert_eq!(b.transport(&lp).unwrap().vertex_images(), &[1, 0]);
    let back = base.path(0, &[(2, true), (2, false)]).unwrap();
    let t = b.transport(&back).unwrap();
    assert!(same_on_homology(
        &induced_chain_map(&t),
        &ChainMap::identity(induced_chain_map(&t).source())
    )
    .unwrap());
    assert!(b
        .transport(&EdgePath {
            start: 1,
            steps: lp.steps.clone()
        })
        .is_err());
}

#[test]
fn transport_is_functorial_on_homology() {
    let b = double_cover();
    let base = b.base();
    let g1 = base.path(0, &[(0, true), (1, true)]).unwrap();
    let g2 = base.path(2, &[(2, false), (0, true)]).unwrap();
    let joined = induced_chain_map(&b.transport(&g1.then(&g2)).unwrap());
    let split = induced_chain_map(&b.transport(&g2).unwrap().compose(&b.transport(&g1).unwrap()).unwrap());
    assert!(same_on_homology(&joined, &split).unwrap());
}

#[test]
fn bad_inverse_is_rejected() {
    let base = triangle_base();
    let f = Arc::new(two_points());
    let id = SimplicialMap::identity(f.clone());
    let swap = SimplicialMap::endo(f.clone(), vec![1, 0]).unwrap();
    let r = DiscreteBundle::new(
        base,
        vec![f; 3],
        vec![id.clone(), id.clone(), swap],
        vec![id.clone(), id.clone(), id],
    );
    assert!(r.is_err());
}

#[test]
fn total_space_examples() {
    let pt = DiscreteBundle::trivial(triangle_base(), Arc::new(point())).unwrap();
    let e = TotalSpace::new(Arc::new(pt)).unwrap();
    let h = homology(&e.complex().chain_complex().unwrap()).unwrap();
    assert_eq!(h.betti_numbers(), vec![1, 1]);
    let cover = TotalSpace::new(Arc::new(double_cover())).unwrap();
    assert_eq!(cover.complex().component_count(), 1);
    assert_eq!(cover.complex().vertex_count(), 6);
    let torus = trivial_product(1, 1).unwrap();
    let k = torus.total_space().complex();
    assert_eq!(k.euler_characteristic(), 0);
    let h = homology(&k.chain_complex().unwrap()).unwrap();
    assert_eq!(h.betti_numbers(), vec![1, 2, 1]);
    let p = Pi1Presentation::new(k.clone(), 0).unwrap();
    assert_eq!(p.group(), &fixtrace::grouprings::GroupClass::FreeAbelian(2));
}

#[test]
fn trivial_products_verify() {
    for (d1, d2) in [(2, 3), (-1, 2), (0, -1), (3, 0), (-1, -1), (2, 2)] {
        let pair = trivial_product(d1, d2).unwrap();
        let l = verify_lefschetz_mult(&pair).unwrap();
        assert_eq!(l.verdict, Verdict::Pass, "({d1},{d2})");
        assert_eq!(l.rhs, ((1 - d1) * (1 - d2)).to_string());
        let r = verify_reidemeister_mult(&pair).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "({d1},{d2}): {r:?}");
        let total = pair.total_trace().unwrap();
        let t = &total.components[0].trace;
        assert_eq!(t.terms().len() as i64, ((1 - d1) * (1 - d2)).abs());
        for (_, c) in t.terms() {
            assert_eq!(*c, int((1 - d1).signum() * (1 - d2).signum()));
        }
        let n = nielsen_additivity(&pair).unwrap();
        assert!(n.holds, "({d1},{d2}): {n:?}");
    }
}

#[test]
fn other_fixtures_verify() {
    for (name, pair) in [
        ("degree two cover", double_cover_degree_two()),
        ("rotation", fixed_point_free_rotation()),
        ("point fiber", point_fiber_reflection()),
        ("figure eight identity", figure_eight_cover_identity()),
    ] {
        let pair = pair.unwrap();
        let l = verify_lefschetz_mult(&pair).unwrap();
        assert_eq!(l.verdict, Verdict::Pass, "{name}: {l:?}");
        let r = verify_reidemeister_mult(&pair).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{name}: {r:?}");
        assert!(nielsen_additivity(&pair).unwrap().holds, "{name}");
    }
}

#[test]
fn degree_two_cover_single_class() {
    let pair = double_cover_degree_two().unwrap();
    let classes = pair.base_twisted_classes(8);
    assert!(classes.complete);
    assert_eq!(classes.classes.len(), 1);
    assert_eq!(pair.refined_l(&classes.classes).unwrap(), vec![int(1)]);
    assert_eq!(pair.base_reidemeister().to_string(), "-1·[0]");
}

#[test]
fn rotation_is_vacuous() {
    let pair = fixed_point_free_rotation().unwrap();
    let n = nielsen_additivity(&pair).unwrap();
    assert_eq!((n.total, n.sum), (0, 0));
    assert!(n.per_class.is_empty());
}

#[test]
fn point_fiber_reproduces_base() {
    let pair = point_fiber_reflection().unwrap();
    let r = verify_reidemeister_mult(&pair).unwrap();
    assert_eq!(r.rhs, pair.base_reidemeister().to_string());
}

#[test]
fn base_class_enumeration() {
    let pair = double_cover_reflection().unwrap();
    let c = pair.base_twisted_classes(8);
    assert!(c.complete);
    assert_eq!(c.classes.len(), 2);
    let id = trivial_product(1, 2).unwrap();
    let c = id.base_twisted_classes(3);
    assert!(!c.complete);
    assert_eq!(c.classes.len(), 7);
}

#[test]
fn fiber_composites_of_the_example() {
    let pair = double_cover_reflection().unwrap();
    let c = pair.base_twisted_classes(8).classes;
    let images: Vec<Vec<usize>> = c
        .iter()
        .map(|x| pair.fiber_composite(x).unwrap().vertex_images().to_vec())
        .collect();
    assert!(images.contains(&vec![0, 1]));
    assert!(images.contains(&vec![1, 0]));
    let prod = trivial_product(2, 3).unwrap();
    let k = prod.fiber_composite(&prod.base_twisted_classes(8).classes[0]).unwrap();
    assert_eq!(&k, &prod.fiber_maps()[0]);
}

#[test]
fn refined_lefschetz_is_representative_independent() {
    for pair in [
        double_cover_reflection().unwrap(),
        double_cover_degree_two().unwrap(),
        trivial_product(-1, 2).unwrap(),
    ] {
        let ctx = pair.base_context();
        let g = ctx.group();
        for class in pair.base_twisted_classes(8).classes {
            let value = pair.refined_lefschetz(&class).unwrap();
            let mut seen = 0;
            let mut h = g.identity();
            'outer: for k in 0..4 {
                for b in 0..pair.bundle().base().vertex_count() {
                    let u = ctx.act(&h, class.class.representative());
                    let rep = pair.representative_at(&u, b).unwrap();
                    assert_eq!(rep.class, class.class);
                    assert_eq!(pair.refined_lefschetz(&rep).unwrap(), value);
                    seen += 1;
                    if seen == 10 {
                        break 'outer;
                    }
                }
                h = g.mul(&h, &g.generator(0));
                let _ = k;
            }
            assert_eq!(seen, 10);
        }
    }
}

#[test]
fn orientable_collapse() {
    for d2 in [-1, 0, 2, 3] {
        let pair = trivial_product(-2, d2).unwrap();
        let classes = pair.base_twisted_classes(8).classes;
        let values = pair.refined_l(&classes).unwrap();
        assert!(values.iter().all(|v| *v == int(1 - d2)));
        let r = verify_lefschetz_mult(&pair).unwrap();
        assert_eq!(r.lhs, ((1 - -2) * (1 - d2)).to_string());
    }
}

#[test]
fn classes_are_disjoint() {
    for pair in [
        double_cover_reflection().unwrap(),
        trivial_product(3, -1).unwrap(),
        trivial_product(-2, 2).unwrap(),
    ] {
        assert!(nielsen_additivity(&pair).unwrap().disjoint);
    }
}

#[test]
fn euler_characteristic_multiplies() {
    let pair = trivial_product(1, 1).unwrap();
    let r = verify_lefschetz_mult(&pair).unwrap();
    assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("0", "0"));
    let parts = two_component_base().unwrap();
    let mut chi_e = 0;
    let mut sum = BigInt::from(0);
    for p in &parts {
        chi_e += p.total_space().complex().euler_characteristic();
        let r = verify_lefschetz_mult(p).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        sum += r.lhs.parse::<BigInt>().unwrap();
    }
    assert_eq!(chi_e, -1);
    assert_eq!(sum, int(chi_e));
}

#[test]
fn augment_of_refined_traces_is_refined_lefschetz() {
    let pair = trivial_product(2, -1).unwrap();
    let total = pair.total_trace().unwrap();
    for c in pair.base_twisted_classes(8).classes {
        let t = pair.refined_reidemeister(&c, &total).unwrap();
        let a: BigInt = t.parts.iter().map(|(_, s)| augment(s)).sum();
        assert_eq!(a, pair.refined_lefschetz(&c).unwrap());
    }
    let _ = GroupElement::Abelian(vec![0]);
}
