//! Polynomial engine properties.

use matrix_ec::poly::{
    build_product_tree, coprime_basis, divrem, exact_div, gcd, inv_series, min_poly, mul, mul_karatsuba,
    mul_ntt, mul_schoolbook, multipoint_eval, tvand_apply, tvand_solve, Poly,
};
use matrix_ec::{Fe, FieldContext, DEFAULT_PRIME};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> FieldContext {
    FieldContext::with_prime(DEFAULT_PRIME).unwrap()
}

fn poly_from(f: &FieldContext, raw: &[u64]) -> Poly {
    Poly::from_u64(f, raw)
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), 0..max_len)
}

/// Linear recurrence check: `gamma` annihilates `seq`.
fn annihilates(f: &FieldContext, gamma: &Poly, seq: &[Fe]) -> bool {
    let l = gamma.deg();
    (0..seq.len().saturating_sub(l)).all(|i| {
        let s = (0..=l).fold(Fe::ZERO, |acc, j| f.mul_add(gamma.coeff(j), seq[i + j], acc));
        s.is_zero()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_algorithms_agree(a in coeffs(300), b in coeffs(300)) {
        let f = field();
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        let want = mul_schoolbook(&f, &a, &b);
        prop_assert_eq!(&mul_karatsuba(&f, &a, &b), &want);
        prop_assert_eq!(&mul_ntt(&f, &a, &b).unwrap(), &want);
        prop_assert_eq!(&mul(&f, &a, &b), &want);
    }

    #[test]
    fn division_identity(a in coeffs(200), b in coeffs(120)) {
        let f = field();
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = divrem(&f, &a, &b).unwrap();
        prop_assert!(r.is_zero() || r.deg() < b.deg());
        let back = mul(&f, &q, &b);
        let sum: Vec<Fe> = (0..back.coeffs().len().max(r.coeffs().len()))
            .map(|i| f.add(back.coeff(i), r.coeff(i)))
            .collect();
        prop_assert_eq!(Poly::from_coeffs(sum), a);
    }

    #[test]
    fn series_inverse(a in coeffs(100), n in 1usize..150) {
        let f = field();
        let mut a = poly_from(&f, &a);
        if a.coeff(0).is_zero() {
            let mut c = a.coeffs().to_vec();
            if c.is_empty() { c.push(Fe::ZERO); }
            c[0] = f.elem(1);
            a = Poly::from_coeffs(c);
        }
        let inv = inv_series(&f, &a, n).unwrap();
        let prod = mul(&f, &a, &inv).truncate(n);
        prop_assert_eq!(prod, Poly::one(&f));
    }

    #[test]
    fn gcd_divides_both(a in coeffs(30), b in coeffs(30), c in coeffs(10)) {
        let f = field();
        let common = poly_from(&f, &c);
        prop_assume!(!common.is_zero());
        let x = mul(&f, &poly_from(&f, &a), &common);
        let y = mul(&f, &poly_from(&f, &b), &common);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let g = gcd(&f, &x, &y);
        prop_assert_eq!(g.leading(), Some(f.elem(1)));
        prop_assert!(exact_div(&f, &x, &g).unwrap().is_some());
        prop_assert!(exact_div(&f, &y, &g).unwrap().is_some());
        prop_assert!(exact_div(&f, &g, &common.monic(&f).unwrap()).unwrap().is_some());
    }

    #[test]
    fn minimal_polynomial_of_sparse_sequence(
        seed in any::<u64>(),
        t in 0usize..12,
    ) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exps = rand::seq::index::sample(&mut rng, 4096, t).into_vec();
        let support: Vec<(usize, Fe)> = exps.iter().map(|&e| (e, f.sample_nonzero(&mut rng))).collect();
        let seq = tvand_apply(&f, &support, f.theta(), 2 * t.max(1)).unwrap();
        let gamma = min_poly(&f, &seq);
        prop_assert_eq!(gamma.deg(), t);
        prop_assert!(annihilates(&f, &gamma, &seq));
        for &e in &exps {
            prop_assert!(gamma.eval(&f, f.pow(f.theta(), e as u64)).is_zero());
        }
    }

    #[test]
    fn product_tree_root(leaves in prop::collection::vec(coeffs(6), 1..20)) {
        let f = field();
        let leaves: Vec<Poly> = leaves.iter().map(|c| poly_from(&f, c)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!leaves.is_empty());
        let tree = build_product_tree(&f, leaves.clone()).unwrap();
        let want = leaves.iter().fold(Poly::one(&f), |acc, l| mul(&f, &acc, l));
        prop_assert_eq!(tree.root(), &want);
        prop_assert_eq!(tree.height(), leaves.len().next_power_of_two().trailing_zeros() as usize);
    }

    #[test]
    fn multipoint_matches_horner(p in coeffs(120), pts in prop::collection::vec(any::<u64>(), 0..100)) {
        let f = field();
        let p = poly_from(&f, &p);
        let pts: Vec<Fe> = pts.into_iter().map(|x| f.elem(x)).collect();
        let want: Vec<Fe> = pts.iter().map(|&x| p.eval(&f, x)).collect();
        prop_assert_eq!(multipoint_eval(&f, &p, &pts), want);
    }

    #[test]
    fn coprime_basis_contract(seed in any::<u64>(), count in 1usize..30) {
        use rand::Rng;
        let f = FieldContext::with_prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inputs: Vec<Poly> = (0..count)
            .map(|_| {
                let mut p = Poly::constant(f.sample_nonzero(&mut rng));
                for _ in 0..rng.gen_range(0..6) {
                    let factor = if rng.gen_bool(0.7) {
                        Poly::linear(&f, f.elem(rng.gen_range(0..12)))
                    } else {
                        // irreducible over GF(101): x^2 - 2 (2 is a non-residue)
                        Poly::from_u64(&f, &[99, 0, 1])
                    };
                    p = mul(&f, &p, &factor);
                }
                p
            })
            .collect();
        let cb = coprime_basis(&f, &inputs).unwrap();
        for (i, b) in cb.basis.iter().enumerate() {
            prop_assert!(!b.is_constant());
            prop_assert_eq!(b.leading(), Some(f.elem(1)));
            for c in &cb.basis[i + 1..] {
                prop_assert!(gcd(&f, b, c).is_constant());
            }
        }
        for (p, row) in inputs.iter().zip(&cb.exponents) {
            let mut acc = Poly::one(&f);
            for (b, &e) in cb.basis.iter().zip(row) {
                for _ in 0..e {
                    acc = mul(&f, &acc, b);
                }
            }
            prop_assert_eq!(acc, p.monic(&f).unwrap());
        }
    }

    #[test]
    fn vandermonde_round_trip(seed in any::<u64>(), t in 1usize..70) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exps = rand::seq::index::sample(&mut rng, 100_000, t).into_vec();
        let support: Vec<(usize, Fe)> = exps.iter().map(|&e| (e, f.sample(&mut rng))).collect();
        let y = tvand_apply(&f, &support, f.theta(), t).unwrap();
        let roots: Vec<Fe> = exps.iter().map(|&e| f.pow(f.theta(), e as u64)).collect();
        let a = tvand_solve(&f, &roots, &y).unwrap();
        prop_assert_eq!(a, support.iter().map(|s| s.1).collect::<Vec<_>>());
    }
}

#[test]
fn ntt_unavailable_without_roots_of_unity() {
    // 126 = 2 * 63, so GF(127) has no 4th root of unity
    let f = FieldContext::with_prime(127).unwrap();
    let a = Poly::from_u64(&f, &[1, 2, 3]);
    assert!(mul_ntt(&f, &a, &a).is_none());
    assert_eq!(mul(&f, &a, &a), mul_schoolbook(&f, &a, &a));
}
