use kanforge::ab::{compose, pentagon_holds, symmetry, AbObject};
use kanforge::fincat::{check_comonad, find_lan, fixtures, is_lan, ComonadData};
use kanforge::graded::{
    check_dg_coalgebra, check_fusion_compat, check_grading_coalgebra, create_dual_chain, fusion, tensor_chain,
    ChainComplex, DifferentialFamily, GradedObject, GradingCoalgebra,
};
use kanforge::linalg::{smith_decompose, IntMatrix};
use kanforge::Int;
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(Int::from).collect()).expect("sized"))
    })
}

fn ab_object() -> impl Strategy<Value = AbObject> {
    (
        0usize..=2,
        prop::sample::select(vec![vec![], vec![2], vec![3], vec![2, 4], vec![2, 6]]),
    )
        .prop_map(|(r, t)| AbObject::new(r, t.into_iter().map(Int::from).collect()).expect("canonical"))
}

fn graded_object() -> impl Strategy<Value = GradedObject> {
    prop::collection::btree_map(-2i64..=2, ab_object(), 0..=3).prop_map(GradedObject::new)
}

/// A random free complex on degrees `0..len`; families with `d² ≠ 0` fall back
/// to the zero differential.
fn free_complex() -> impl Strategy<Value = ChainComplex> {
    (1usize..=3, any::<u64>()).prop_map(|(len, seed)| {
        let mut rng = kanforge::corpus::rng(seed);
        let fam = kanforge::corpus::random_family(&mut rng, len, 2, 2);
        if check_dg_coalgebra(&fam).holds() {
            ChainComplex::try_from(fam).expect("d² = 0")
        } else {
            ChainComplex::trivial(fam.underlying().clone())
        }
    })
}

fn big(i: &Int) -> BigInt {
    i.to_big()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn int_arithmetic_agrees_with_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let (x, y, z) = (Int::from(a), Int::from(b), Int::from(c));
        prop_assert_eq!(big(&(&x + &y)), BigInt::from(a) + b);
        prop_assert_eq!(big(&(&x * &y)), BigInt::from(a) * b);
        prop_assert_eq!(big(&(&x - &y)), BigInt::from(a) - b);
        let mut acc = z.clone();
        acc.add_mul(&x, &y);
        prop_assert_eq!(big(&acc), BigInt::from(c) + BigInt::from(a) * b);
        // canonical representation: equal values compare equal whatever path produced them
        let back = &(&acc - &(&x * &y)) - &z;
        prop_assert_eq!(back, Int::ZERO);
    }

    #[test]
    fn smith_certificate(a in matrix(5, 9)) {
        let s = smith_decompose(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.mul(&s.u_inv).unwrap().is_identity());
        prop_assert!(s.v.mul(&s.v_inv).unwrap().is_identity());
        prop_assert!(s.d.is_diagonal());
        for w in s.invariants.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert!(s.invariants.iter().all(Int::is_positive));
    }

    #[test]
    fn smith_of_transpose_has_same_invariants(a in matrix(4, 6)) {
        prop_assert_eq!(smith_decompose(&a).invariants, smith_decompose(&a.transpose()).invariants);
    }

    #[test]
    fn symmetry_is_an_involution(a in ab_object(), b in ab_object()) {
        let there = symmetry(&a, &b);
        let back = symmetry(&b, &a);
        prop_assert!(compose(&back, &there).unwrap().is_identity());
    }

    #[test]
    fn pentagon(a in ab_object(), b in ab_object(), c in ab_object(), d in ab_object()) {
        prop_assert!(pentagon_holds(&a, &b, &c, &d).unwrap());
    }

    #[test]
    fn grading_of_a_graded_object_is_valid(g in graded_object()) {
        let c = GradingCoalgebra::from_graded(&g);
        let r = check_grading_coalgebra(&c).unwrap();
        prop_assert!(r.valid);
        prop_assert_eq!(r.roundtrip, Some(true));
    }

    #[test]
    fn dropping_a_projection_breaks_the_counit(g in graded_object()) {
        prop_assume!(!g.is_zero());
        let mut c = GradingCoalgebra::from_graded(&g);
        let n = *c.projections.keys().next().unwrap();
        c.projections.remove(&n);
        prop_assert!(!check_grading_coalgebra(&c).unwrap().valid);
    }

    #[test]
    fn koszul_tensor_squares_to_zero(x in free_complex(), y in free_complex()) {
        let t = tensor_chain(&x, &y).unwrap();
        prop_assert!(check_dg_coalgebra(t.family()).holds());
    }

    #[test]
    fn double_dual_negates_the_differential(x in free_complex()) {
        // the signs (−1)^{n+1} compose to −1; (−1)^n in degree n is then an
        // isomorphism back to x
        let k = create_dual_chain(&x).unwrap().expect("free");
        prop_assert!(k.checks.all_pass());
        let kk = create_dual_chain(&k.dual_complex).unwrap().expect("free");
        let negated = ChainComplex::new(
            x.underlying().clone(),
            x.differentials().iter().map(|(&n, d)| (n, d.neg())).collect(),
        )
        .unwrap();
        prop_assert_eq!(kk.dual_complex, negated);
    }

    #[test]
    fn torsion_blocks_every_dual(x in free_complex()) {
        let t = kanforge::corpus::torsion_variant(&x);
        prop_assert!(create_dual_chain(&t).unwrap().is_none());
    }

    #[test]
    fn fusion_compatibility_with_torsion(vp in graded_object(), x in free_complex(), shift in -1i64..=1) {
        let x = ChainComplex::try_from(
            DifferentialFamily::new(
                x.underlying().shift(shift),
                x.differentials().iter().map(|(&n, d)| (n + shift, d.clone())).collect(),
            )
            .unwrap(),
        )
        .unwrap();
        let w = fusion(&vp, &x).unwrap();
        let c = check_fusion_compat(&w, Some(&ChainComplex::trivial(vp.clone()))).unwrap();
        prop_assert!(c.all_pass(), "{:?}", c);
    }

    #[test]
    fn thin_comonads_are_interior_operators(map in prop::collection::vec(0usize..4, 4)) {
        // on the four subsets of {1, 2}: monotone, deflationary, idempotent,
        // preserving ∩ and the full set
        let c = fixtures::powerset(2);
        let g = ComonadData::thin(&c, &map).unwrap();
        let sub = |a: usize, b: usize| a & !b == 0;
        let interior = (0..4).all(|a| {
            sub(map[a], a)
                && map[map[a]] == map[a]
                && (0..4).all(|b| map[a & b] == map[a] & map[b] && (!sub(a, b) || sub(map[a], map[b])))
        }) && map[3] == 3;
        prop_assert_eq!(check_comonad(&c, &g).passed(), interior);
    }

    #[test]
    fn found_extensions_are_extensions(n in 0u32..=3, u in 0usize..8, v in 0usize..8) {
        let c = fixtures::powerset(n);
        let (u, v) = (u % c.n_objects(), v % c.n_objects());
        if let Some(r) = find_lan(&c, v, u) {
            prop_assert!(is_lan(&c, v, u, r.k_id, r.kappa_id).is_some());
        }
    }
}
