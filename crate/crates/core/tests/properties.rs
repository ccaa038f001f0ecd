use std::sync::Arc;

use fixtrace::catalog::*;
use fixtrace::exactalg::{hopf_chain_trace, lefschetz_from_homology, smith_normal_form, IntMatrix};
use fixtrace::grouprings::*;
use fixtrace::reidemeister::reidemeister_trace;
use fixtrace::simplicial::{induced_chain_map, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix2() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::array::uniform2(prop::array::uniform2(-3i64..=3))
}

fn det_one_minus(m: &[[i64; 2]; 2]) -> i64 {
    (1 - m[0][0]) * (1 - m[1][1]) - m[0][1] * m[1][0]
}

fn abelian_ctx(m: &[[i64; 2]; 2]) -> TwistedConjugacy {
    TwistedConjugacy::new(GroupHom::from_matrix(&IntMatrix::from_rows(m)).unwrap()).unwrap()
}

fn word_strategy(gens: i32, max: usize) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(prop_oneof![(1..=gens), (-gens..=-1)], 0..max)
        .prop_map(|w| GroupElement::Word(reduce_word(&w)))
}

/// Contexts whose class comparisons are decided exactly.
fn decidable_contexts() -> Vec<TwistedConjugacy> {
    let free = GroupClass::Free(2);
    let d4 = GroupClass::Finite(FiniteGroup::dihedral(4));
    let conj = |a: usize| {
        let g = FiniteGroup::dihedral(4);
        let images = (0..g.order())
            .map(|x| GroupElement::Finite(g.mul(g.mul(a, x), g.inv(a))))
            .collect();
        GroupHom::endo(d4.clone(), images).unwrap()
    };
    let c6 = GroupClass::Finite(FiniteGroup::cyclic(6));
    let times =
        |k: usize| GroupHom::endo(c6.clone(), (0..6).map(|x| GroupElement::Finite(x * k % 6)).collect()).unwrap();
    vec![
        TwistedConjugacy::new(GroupHom::identity(free.clone())).unwrap(),
        TwistedConjugacy::new(GroupHom::endo(free.clone(), vec![free.identity(), free.identity()]).unwrap()).unwrap(),
        TwistedConjugacy::new(conj(1)).unwrap(),
        TwistedConjugacy::new(conj(5)).unwrap(),
        TwistedConjugacy::new(times(5)).unwrap(),
        TwistedConjugacy::new(times(3)).unwrap(),
    ]
}

fn random_element(g: &GroupClass, rng: &mut ChaCha8Rng) -> GroupElement {
    use rand::Rng;
    match g {
        GroupClass::FreeAbelian(n) => GroupElement::Abelian((0..*n).map(|_| rng.gen_range(-4..=4)).collect()),
        GroupClass::Free(n) => {
            let len = rng.gen_range(0..6);
            let n = *n as i32;
            let w: Vec<Letter> = (0..len)
                .map(|_| {
                    let l = rng.gen_range(1..=n);
                    if rng.gen_bool(0.5) {
                        l
                    } else {
                        -l
                    }
                })
                .collect();
            GroupElement::Word(reduce_word(&w))
        }
        GroupClass::Finite(t) => GroupElement::Finite(rng.gen_range(0..t.order())),
    }
}

#[test]
fn canonical_class_is_stable_on_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut contexts = decidable_contexts();
    for m in [[[2, 1], [1, 1]], [[0, 1], [-1, 0]], [[3, 0], [0, -1]], [[1, 2], [0, 1]]] {
        contexts.push(abelian_ctx(&m));
    }
    for ctx in &contexts {
        let g = ctx.group().clone();
        for _ in 0..5 {
            let x = random_element(&g, &mut rng);
            let class = ctx.class_of(&x);
            for _ in 0..50 {
                let h = random_element(&g, &mut rng);
                let y = ctx.act(&h, &x);
                assert_eq!(ctx.class_of(&y), class, "{x} ~ {y}");
                assert_eq!(ctx.compare(&x, &y), Comparison::Equal);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abelian_class_count_is_det(m in matrix2()) {
        let d = det_one_minus(&m);
        prop_assume!(d != 0);
        let ctx = abelian_ctx(&m);
        let mut reps = std::collections::BTreeSet::new();
        let r = d.abs() + 3;
        for i in -r..=r {
            for j in -r..=r {
                reps.insert(ctx.class_of(&GroupElement::Abelian(vec![i, j])).representative().clone());
            }
        }
        prop_assert_eq!(reps.len() as i64, d.abs());
    }

    #[test]
    fn abelian_orbits_share_a_class(m in matrix2(), x in prop::array::uniform2(-5i64..=5), h in prop::array::uniform2(-5i64..=5)) {
        let ctx = abelian_ctx(&m);
        let x = GroupElement::Abelian(x.to_vec());
        let y = ctx.act(&GroupElement::Abelian(h.to_vec()), &x);
        prop_assert_eq!(ctx.class_of(&x), ctx.class_of(&y));
    }

    #[test]
    fn identity_and_trivial_free_classes(x in word_strategy(2, 8), h in word_strategy(2, 6)) {
        for ctx in &decidable_contexts()[..2] {
            let y = ctx.act(&h, &x);
            prop_assert_eq!(ctx.class_of(&x), ctx.class_of(&y));
        }
    }

    #[test]
    fn shadow_cyclicity_over_free_abelian(
        m in matrix2(),
        a in prop::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 4),
        b in prop::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 4),
    ) {
        let ctx = abelian_ctx(&m);
        let g = ctx.group().clone();
        let build = |e: &[(i64, i64, i64)]| {
            let data = e.iter().map(|&(c, i, j)| GroupRingElement::monomial(c, GroupElement::Abelian(vec![i, j]))).collect();
            GroupRingMatrix::from_entries(2, 2, data).unwrap()
        };
        let (a, b) = (build(&a), build(&b));
        let left = ctx.hs_trace(&a.mul(&b, &g).unwrap()).unwrap();
        let right = ctx.hs_trace(&b.mul(&a.map(ctx.endo()), &g).unwrap()).unwrap();
        prop_assert_eq!(ctx.compare_shadows(&left, &right), Comparison::Equal);
        prop_assert_eq!(augment(&left), augment(&right));
    }

    #[test]
    fn shadow_cyclicity_over_finite_groups(
        which in 0usize..4,
        a in prop::collection::vec((-2i64..=2, 0usize..8), 9),
        b in prop::collection::vec((-2i64..=2, 0usize..8), 9),
    ) {
        let ctx = &decidable_contexts()[2 + which];
        let g = ctx.group().clone();
        let n = g.generator_count();
        let build = |e: &[(i64, usize)]| {
            let data = e.iter().map(|&(c, x)| GroupRingElement::monomial(c, GroupElement::Finite(x % n))).collect();
            GroupRingMatrix::from_entries(3, 3, data).unwrap()
        };
        let (a, b) = (build(&a), build(&b));
        let left = ctx.hs_trace(&a.mul(&b, &g).unwrap()).unwrap();
        let right = ctx.hs_trace(&b.mul(&a.map(ctx.endo()), &g).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn augment_is_additive(m in matrix2(), xs in prop::collection::vec((-3i64..=3, -4i64..=4, -4i64..=4), 0..6), ys in prop::collection::vec((-3i64..=3, -4i64..=4, -4i64..=4), 0..6)) {
        let ctx = abelian_ctx(&m);
        let shadow = |v: &[(i64, i64, i64)]| ctx.shadow_of(&GroupRingElement::from_terms(v.iter().map(|&(c, i, j)| (BigInt::from(c), GroupElement::Abelian(vec![i, j])))));
        let (a, b) = (shadow(&xs), shadow(&ys));
        prop_assert_eq!(augment(&ctx.add(&a, &b)), augment(&a) + augment(&b));
    }

    #[test]
    fn pushforward_is_equivariant(k in -3i64..=3, d in -3i64..=3, xs in prop::collection::vec((-3i64..=3, -6i64..=6), 0..5), h in -4i64..=4) {
        prop_assume!(k != 0);
        // ι = ×k intertwines ×d on both sides
        let z = GroupClass::FreeAbelian(1);
        let phi = GroupHom::endo(z.clone(), vec![GroupElement::Abelian(vec![d])]).unwrap();
        let ctx = TwistedConjugacy::new(phi).unwrap();
        let iota = GroupHom::new(z.clone(), z.clone(), vec![GroupElement::Abelian(vec![k])]).unwrap();
        let e = z.identity();
        let s = ctx.shadow_of(&GroupRingElement::from_terms(xs.iter().map(|&(c, x)| (BigInt::from(c), GroupElement::Abelian(vec![x])))));
        let pushed = pushforward(&iota, &ctx, &ctx, &e, &s).unwrap();
        prop_assert_eq!(augment(&pushed), augment(&s));
        // moving a representative within its class does not change the image
        for (class, c) in s.terms() {
            let moved = ctx.act(&GroupElement::Abelian(vec![h]), class.representative());
            let one = ctx.shadow_of(&GroupRingElement::monomial(c.clone(), moved));
            let single = ctx.shadow_of(&GroupRingElement::monomial(c.clone(), class.representative().clone()));
            let a = pushforward(&iota, &ctx, &ctx, &e, &one).unwrap();
            let b = pushforward(&iota, &ctx, &ctx, &e, &single).unwrap();
            prop_assert_eq!(ctx.compare_shadows(&a, &b), Comparison::Equal);
        }
    }

    #[test]
    fn smith_form_invariants(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect();
        let a = IntMatrix::from_vec(rows, cols, data).unwrap();
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.s.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(rows));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(cols));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(f.iter().all(|x| x.is_positive()));
        prop_assert_eq!(s.rank(), a.rank());
    }
}

fn fixture_complexes() -> Vec<(&'static str, Arc<SimplicialComplex>)> {
    vec![
        ("point", Arc::new(point())),
        ("circle", Arc::new(circle(5))),
        ("figure eight", Arc::new(figure_eight())),
        ("torus", Arc::new(torus7())),
        ("projective plane", Arc::new(rp2())),
        ("two circles", Arc::new(two_circles())),
    ]
}

#[test]
fn boundaries_square_to_zero_on_fixtures() {
    for (name, k) in fixture_complexes() {
        let c = k.chain_complex();
        for i in 1..c.len().saturating_sub(1) {
            let dd = c.boundary(i).mul(&c.boundary(i + 1)).unwrap();
            assert!(dd.is_zero(), "{name} degree {i}");
        }
        for i in 0..c.len() {
            let s = smith_normal_form(&c.boundary(i));
            assert_eq!(s.u.mul(&c.boundary(i)).unwrap().mul(&s.v).unwrap(), s.s, "{name}");
        }
    }
    for pair in [trivial_product(2, 3).unwrap(), double_cover_reflection().unwrap()] {
        let c = pair.total_space().complex().chain_complex().unwrap();
        for i in 1..c.len().saturating_sub(1) {
            assert!(c.boundary(i).mul(&c.boundary(i + 1)).unwrap().is_zero());
        }
    }
}

#[test]
fn random_maps_satisfy_hopf_and_augmentation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut count = 0;
    for (name, k) in fixture_complexes() {
        for _ in 0..20 {
            let f = random_simplicial_map(&k, &k, &mut rng);
            let m = induced_chain_map(&f);
            let l = lefschetz_from_homology(&m).unwrap();
            assert_eq!(hopf_chain_trace(&m).unwrap(), l, "{name}: {:?}", f.vertex_images());
            let t = reidemeister_trace(&f.to_cellular(), DEFAULT_DEPTH).unwrap();
            if t.is_determinate() {
                assert_eq!(t.lefschetz(), l, "{name}: {:?}", f.vertex_images());
            }
            count += 1;
        }
    }
    assert!(count >= 100);
}

#[test]
fn lefschetz_is_multiplicative_on_tensor_products() {
    use fixtrace::exactalg::tensor_chain_map;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spaces = fixture_complexes();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (4, 1), (2, 5)] {
        let (a, b) = (&spaces[i].1, &spaces[j].1);
        let f = induced_chain_map(&random_simplicial_map(a, a, &mut rng));
        let g = induced_chain_map(&random_simplicial_map(b, b, &mut rng));
        let fg = tensor_chain_map(&f, &g).unwrap();
        let l = lefschetz_from_homology(&f).unwrap() * lefschetz_from_homology(&g).unwrap();
        assert_eq!(lefschetz_from_homology(&fg).unwrap(), l);
        assert_eq!(hopf_chain_trace(&fg).unwrap(), l);
    }
}
