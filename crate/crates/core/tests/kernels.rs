//! Field and matrix kernels against independent big-integer arithmetic.

use matrix_ec::field::{distinct_prime_factors, is_prime};
use matrix_ec::matrix::{mul_naive, mul_strassen, mul_strassen_with};
use matrix_ec::{mat_mul, plan_mul, Fe, FieldContext, Kernel, Matrix, SparseMatrix, DEFAULT_PRIME};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 5] = [2, 7, 65537, DEFAULT_PRIME, 9_223_372_036_854_775_783];

fn bigint_product(p: u64, a: &Matrix, b: &Matrix) -> Vec<u64> {
    let p = BigUint::from(p);
    let mut out = Vec::with_capacity(a.rows() * b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = BigUint::from(0u32);
            for k in 0..a.cols() {
                acc += BigUint::from(a.get(i, k).value()) * BigUint::from(b.get(k, j).value());
            }
            let r = acc % &p;
            out.push(r.iter_u64_digits().next().unwrap_or(0));
        }
    }
    out
}

fn values(m: &Matrix) -> Vec<u64> {
    m.data().iter().map(|v| v.value()).collect()
}

#[test]
fn products_match_bigint_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3001);
    for trial in 0..120 {
        let p = PRIMES[trial % PRIMES.len()];
        let f = FieldContext::with_prime(p).unwrap();
        let (m, l, n) = (rng.gen_range(1..40), rng.gen_range(1..40), rng.gen_range(1..40));
        let a = Matrix::random(&f, m, l, &mut rng);
        let b = Matrix::random(&f, l, n, &mut rng);
        let want = bigint_product(p, &a, &b);
        assert_eq!(values(&mul_naive(&f, &a, &b).unwrap()), want);
        assert_eq!(values(&mul_strassen_with(&f, &a, &b, 4).unwrap()), want);
        assert_eq!(values(&a.to_sparse().mul_dense(&f, &b).unwrap()), want);
        assert_eq!(values(&mat_mul(&f, &a, &b).unwrap()), want);
    }
}

#[test]
fn large_strassen_recursion() {
    let f = FieldContext::with_prime(DEFAULT_PRIME).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3002);
    for (m, l, n) in [(130, 130, 130), (200, 90, 150), (257, 257, 257)] {
        let a = Matrix::random(&f, m, l, &mut rng);
        let b = Matrix::random(&f, l, n, &mut rng);
        assert_eq!(mul_strassen(&f, &a, &b).unwrap(), mul_naive(&f, &a, &b).unwrap());
    }
}

#[test]
fn plan_examples() {
    assert_eq!(plan_mul(100, 100, 100, 10).choice, Kernel::SparseLeft);
    assert_ne!(plan_mul(100, 100, 100, 10_000).choice, Kernel::SparseLeft);
    assert_eq!(plan_mul(1, 50, 50, 50).choice, Kernel::NaiveDense);
    assert_eq!(plan_mul(200, 200, 200, 40_000).choice, Kernel::Strassen);
    assert_eq!(plan_mul(3, 4, 5, 7), plan_mul(3, 4, 5, 7));
}

#[test]
fn inverse_round_trip() {
    let f = FieldContext::with_prime(65537).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3003);
    for _ in 0..30 {
        let n = rng.gen_range(1..30);
        let a = Matrix::random(&f, n, n, &mut rng);
        if let Ok(inv) = a.inverse(&f) {
            assert_eq!(mat_mul(&f, &a, &inv).unwrap(), Matrix::identity(&f, n));
            assert_eq!(a.rank(&f), n);
        } else {
            assert!(a.rank(&f) < n);
        }
    }
}

#[test]
fn prime_factors_rebuild() {
    for p in [3u64, 7, 31, 65537, DEFAULT_PRIME, 9_223_372_036_854_775_783] {
        assert!(is_prime(p));
        let mut rest = p - 1;
        for q in distinct_prime_factors(p - 1) {
            assert!(is_prime(q));
            while rest % q == 0 {
                rest /= q;
            }
        }
        assert_eq!(rest, 1);
    }
}

fn any_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

proptest! {
    #[test]
    fn field_ops_match_bigint(p in any_prime(), x in any::<u64>(), y in any::<u64>()) {
        let f = FieldContext::with_prime(p).unwrap();
        let (a, b) = (f.elem(x), f.elem(y));
        let big = |v: u64| BigUint::from(v);
        let bp = big(p);
        let expect_mul = (big(a.value()) * big(b.value())) % &bp;
        prop_assert_eq!(BigUint::from(f.mul(a, b).value()), expect_mul);
        prop_assert_eq!(BigUint::from(f.add(a, b).value()), (big(a.value()) + big(b.value())) % &bp);
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn theta_has_full_order(p in any_prime()) {
        let f = FieldContext::with_prime(p).unwrap();
        prop_assert_eq!(f.theta_order(), p - 1);
        prop_assert_eq!(f.pow(f.theta(), p - 1), f.elem(1));
    }

    #[test]
    fn sparse_dense_agree(seed in any::<u64>(), m in 1usize..12, n in 1usize..12) {
        let f = FieldContext::with_prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = Matrix::random(&f, m, n, &mut rng);
        let s: SparseMatrix = d.to_sparse();
        prop_assert_eq!(s.to_dense(), d.clone());
        prop_assert_eq!(s.transpose().to_dense(), d.transpose());
        prop_assert!(s.entries().iter().all(|e| !e.2.is_zero()));
        let v = Matrix::random(&f, n, 3, &mut rng);
        prop_assert_eq!(s.mul_dense(&f, &v).unwrap(), mul_naive(&f, &d, &v).unwrap());
        let w = Matrix::random(&f, 2, m, &mut rng);
        prop_assert_eq!(s.left_mul_dense(&f, &w).unwrap(), mul_naive(&f, &w, &d).unwrap());
    }
}
