//! Exact identities over the Gaussian rationals.

use elastic_corners::exact::{GRMatrix, GaussianRational as GR};
use elastic_corners::lame::{
    ab, algebra_suite, b_matrix_identities, check_lame_symbol, det_rank_one_update, lame_symbol, lsq_factorization_check,
    random_lame, random_rank_one_instance, SymbolPoint,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn rank_one_identity_on_500_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..500 {
        let (a, u, v) = random_rank_one_instance(&mut rng);
        let (lhs, rhs) = det_rank_one_update(&a, &u, &v).unwrap();
        assert_eq!(lhs, rhs, "instance {i}");
    }
}

#[test]
fn symbol_identities_on_200_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let pt = SymbolPoint::random(&mut rng);
        let r = check_lame_symbol(&pt);
        assert!(r.all(), "point {i}: {r:?}");
        let s = lame_symbol(&pt);
        // P² = (η₁² + η₂²) I
        assert_eq!(&s.p * &s.p, GRMatrix::identity(2).scale(&pt.eta_sq()));
        assert!(lsq_factorization_check(&pt).all(), "point {i}");
    }
}

#[test]
fn b_matrix_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let (l, m) = random_lame(&mut rng);
        let r = b_matrix_identities(&l, &m).unwrap();
        assert!(r.all(), "{r:?}");
    }
}

#[test]
fn b_matrix_mixed_sum_is_scalar() {
    // B B̄ᵀ + B̄ Bᵀ = 2(a+b) I, checked directly
    let (l, m) = (q(-9, 10), q(1, 1));
    let b = elastic_corners::lame::b_matrix(&l, &m);
    let bb = b.conj();
    let (a_, b_) = ab(&l, &m);
    let sum = &(&b * &bb.transpose()) + &(&bb * &b.transpose());
    assert_eq!(sum, GRMatrix::identity(2).scale(&GR::real(BigRational::from_integer(2.into()) * (a_ + b_))));
}

#[test]
fn inadmissible_pairs_rejected() {
    assert!(b_matrix_identities(&q(-2, 1), &q(1, 1)).is_err());
    assert!(SymbolPoint::new(q(1, 1), q(0, 1), (q(1, 1), q(0, 1))).is_err());
}

#[test]
fn suite_runs_seeded_and_deterministic() {
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        serde_json::to_string(&algebra_suite(&mut rng, &q(1, 1), &q(1, 1), 30, 30).unwrap()).unwrap()
    };
    assert_eq!(run(), run());
}

fn small_q() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn small_gr() -> impl Strategy<Value = GR> {
    (small_q(), small_q()).prop_map(|(a, b)| GR::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gaussian_field_axioms(a in small_gr(), b in small_gr(), c in small_gr()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, GR::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn rank_one_identity_holds(
        m in proptest::collection::vec(small_gr(), 4),
        u in proptest::collection::vec(small_gr(), 2),
        v in proptest::collection::vec(small_gr(), 2),
    ) {
        let a = GRMatrix::from_rows(vec![m[..2].to_vec(), m[2..].to_vec()]);
        prop_assume!(!a.det().is_zero());
        let (l, r) = det_rank_one_update(&a, &GRMatrix::column(u), &GRMatrix::column(v)).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn symbol_identities_hold(mu in 1i64..40, lam in -39i64..60, e1 in small_q(), e2 in small_q()) {
        prop_assume!(lam + mu > 0);
        prop_assume!(!(e1 == q(0, 1) && e2 == q(0, 1)));
        let pt = SymbolPoint::new(q(lam, 3), q(mu, 3), (e1, e2)).unwrap();
        prop_assert!(check_lame_symbol(&pt).all());
        prop_assert!(lsq_factorization_check(&pt).all());
    }

    #[test]
    fn determinant_is_multiplicative(m in proptest::collection::vec(small_gr(), 9), n in proptest::collection::vec(small_gr(), 9)) {
        let mk = |v: &[GR]| GRMatrix::from_rows(vec![v[..3].to_vec(), v[3..6].to_vec(), v[6..].to_vec()]);
        let (a, b) = (mk(&m), mk(&n));
        prop_assert_eq!((&a * &b).det(), &a.det() * &b.det());
        prop_assert_eq!(a.det(), a.det_cofactor());
    }
}
