//! Randomized algebraic identities across modules.

use frcalc_core::abgroup::{
    cokernel, determinant, kernel, localize, smith_normal_form, AbGroupPresentation, GroupHom, IntMatrix,
};
use frcalc_core::battery::invariant_factors_by_minors;
use frcalc_core::frames::{dot, pi1, pi2, random_frame, tensor_frame, verify_frame};
use frcalc_core::fredholm::{amplify, index, random_fredholm};
use frcalc_core::homspace::{compose_phi, ev, intertwiner, intertwiner_residual, random_hom};
use frcalc_core::linalg::{complex_gaussian, hs_inner, kron, random_unitary, seeded_rng, Tolerance};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn small_int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-12i64..=12, cols), rows)
        .prop_map(move |r| IntMatrix::from_i64(cols, &r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative_exactly(seed in any::<u64>(), n1 in 1usize..4, n2 in 1usize..4, n3 in 1usize..3) {
        let mut rng = seeded_rng(seed);
        let a = complex_gaussian(&mut rng, n1, n2);
        let b = complex_gaussian(&mut rng, n2, n3);
        let c = complex_gaussian(&mut rng, n3, n1);
        // same index layout on both sides; values differ only by the rounding
        // of the triple products
        let lhs = kron(&kron(&a, &b), &c);
        let rhs = kron(&a, &kron(&b, &c));
        prop_assert!(lhs.max_diff(&rhs) <= 1e-15 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn conjugation_preserves_hs(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = seeded_rng(seed);
        let x = complex_gaussian(&mut rng, n, n);
        let y = complex_gaussian(&mut rng, n, n);
        let u = random_unitary(n, seed ^ 0x55);
        let ua = u.adjoint();
        let before = hs_inner(&x, &y).unwrap();
        let after = hs_inner(&(&(&u * &x) * &ua), &(&(&u * &y) * &ua)).unwrap();
        prop_assert!((before - after).norm() <= 1e-8);
    }

    #[test]
    fn random_frames_verify_and_split(seed in any::<u64>(), m in 1usize..4, r in 1usize..4, cof in 1usize..3) {
        let beta = random_frame(m * r, cof, seed);
        let rep = verify_frame(beta.mats(), &tol()).unwrap();
        prop_assert!(rep.pass, "{rep:?}");
        let back = dot(&pi1(&beta, m).unwrap(), &pi2(&beta, m).unwrap(), &tol()).unwrap();
        prop_assert!(back.max_diff(&beta) <= 1e-9);
    }

    #[test]
    fn tensor_of_frames_is_a_frame(seed in any::<u64>(), a in 1usize..4, p in 1usize..4) {
        let mu = tensor_frame(&random_frame(a, 1, seed), &random_frame(p, 2, seed.wrapping_add(1)));
        prop_assert!(verify_frame(mu.mats(), &tol()).unwrap().pass);
    }

    #[test]
    fn ev_is_multiplicative_and_unital(seed in any::<u64>(), d in 1usize..4, l in 1usize..4) {
        let h = random_hom(d, l, seed);
        let mut rng = seeded_rng(seed.wrapping_add(7));
        let x = complex_gaussian(&mut rng, d, d);
        let y = complex_gaussian(&mut rng, d, d);
        let lhs = ev(&h, &(&x * &y)).unwrap();
        let rhs = &ev(&h, &x).unwrap() * &ev(&h, &y).unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-9);
        let e = ev(&h, &frcalc_core::linalg::CMatrix::identity(d)).unwrap();
        prop_assert!(e.max_diff(&frcalc_core::linalg::CMatrix::identity(d * l)) <= 1e-9);
        prop_assert!(ev(&h, &x.adjoint()).unwrap().max_diff(&ev(&h, &x).unwrap().adjoint()) <= 1e-9);
    }

    #[test]
    fn intertwiner_implements_hom(seed in any::<u64>(), d in 1usize..4, l in 1usize..4) {
        let h = random_hom(d, l, seed);
        let u = intertwiner(&h).unwrap();
        prop_assert!(intertwiner_residual(&h, &u) <= 1e-8);
        prop_assert!(u.unitarity_residual() <= 1e-9);
    }

    #[test]
    fn fredholm_index_matches_windows(seed in any::<u64>(), n in 1usize..4, dom in 0usize..4, cod in 0usize..4, def in 0usize..3, l in 1usize..4) {
        let t = random_fredholm(n, dom, cod, def, seed);
        let i = index(&t, &tol()).unwrap();
        prop_assert_eq!(i, t.closed_form_index());
        let h = random_hom(n, l, seed.wrapping_add(3));
        let h2 = random_hom(n, l, seed.wrapping_add(4));
        prop_assert_eq!(index(&amplify(&h, &t).unwrap(), &tol()).unwrap(), l as i64 * i);
        let hh = compose_phi(&h2, &h).unwrap();
        prop_assert_eq!(index(&amplify(&hh, &t).unwrap(), &tol()).unwrap(), (l * l) as i64 * i);
    }

    #[test]
    fn smith_form_is_exact(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_int_matrix(r, c))) {
        let sf = smith_normal_form(&m).unwrap();
        prop_assert_eq!(&sf.u.mul(&m).mul(&sf.v), &sf.d);
        prop_assert!(determinant(&sf.u).abs().is_one());
        prop_assert!(determinant(&sf.v).abs().is_one());
        let f = sf.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        prop_assert_eq!(f, invariant_factors_by_minors(&m));
    }

    #[test]
    fn diagonal_presentations_have_product_order(ds in prop::collection::vec(1i64..30, 1..4)) {
        let g = AbGroupPresentation::product_of_cyclics(&ds);
        let want: BigInt = ds.iter().map(|&d| BigInt::from(d)).product();
        prop_assert_eq!(g.order(), Some(want));
    }

    #[test]
    fn kernel_and_cokernel_orders_multiply(a in 1i64..40, b in 1i64..40, k in -40i64..40) {
        // Z/a → Z/b, 1 ↦ k·(b / gcd(a, b)), which is always well defined
        let g = num_integer::gcd(a, b);
        let f = GroupHom::cyclic(a, b, k * (b / g)).unwrap();
        let ker = kernel(&f).unwrap().order().unwrap();
        let cok = cokernel(&f).unwrap().order().unwrap();
        // |image| = a / |ker| = b / |coker|
        prop_assert_eq!(ker * BigInt::from(b), BigInt::from(a) * cok);
    }

    #[test]
    fn localization_is_idempotent(ds in prop::collection::vec(1i64..60, 1..4), l in 2u64..8) {
        let g = AbGroupPresentation::product_of_cyclics(&ds);
        let once = localize(&g, l).unwrap();
        prop_assert_eq!(localize(&once, l).unwrap(), once.clone());
        if let Some(o) = once.order() {
            prop_assert!(num_integer::gcd(o, BigInt::from(l)).is_one());
        }
    }
}
