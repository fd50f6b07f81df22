use super::Poly;
use crate::field::{Fe, FieldContext};

/// Minimal polynomial of a linearly recurrent sequence, by the classical
/// quadratic Berlekamp-Massey iteration.
///
/// Returns the monic generator `Γ(z) = z^L + ...` where `L` is the linear
/// complexity of `seq`. An all-zero sequence gives `Γ = 1`. For a sequence of
/// `2s` evaluations of an `s`-sparse polynomial at consecutive powers, the
/// degree is at most `s`; other inputs may produce degree up to `seq.len()`.
pub fn min_poly(f: &FieldContext, seq: &[Fe]) -> Poly {
    // connection polynomial C(z) = 1 + c_1 z + ... + c_L z^L
    let mut c = vec![f.elem(1)];
    let mut b = vec![f.elem(1)];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_disc = f.elem(1);
    for n in 0..seq.len() {
        let mut d = seq[n];
        for i in 1..=len.min(c.len() - 1) {
            d = f.mul_add(c[i], seq[n - i], d);
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = f.mul(d, f.inv(last_disc).expect("discrepancy is nonzero"));
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, Fe::ZERO);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = f.sub(c[i + shift], f.mul(coef, bi));
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = prev;
            last_disc = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, Fe::ZERO);
    c.reverse();
    Poly::from_coeffs(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn seq(f: &FieldContext, v: &[u64]) -> Vec<Fe> {
        v.iter().map(|&x| f.elem(x)).collect()
    }

    /// Checks that `g` annihilates `s`: sum_i g_i s_{j+i} = 0 for every window.
    fn annihilates(f: &FieldContext, g: &Poly, s: &[Fe]) -> bool {
        let d = g.deg();
        (0..s.len().saturating_sub(d)).all(|j| {
            (0..=d)
                .fold(Fe::ZERO, |acc, i| f.mul_add(g.coeff(i), s[j + i], acc))
                .is_zero()
        })
    }

    #[test]
    fn geometric_sequence() {
        let f = FieldContext::with_prime(7).unwrap();
        let s = seq(&f, &[1, 3, 2, 6]);
        let g = min_poly(&f, &s);
        assert_eq!(g, Poly::from_u64(&f, &[4, 1])); // z - 3
        assert!(annihilates(&f, &g, &s));
    }

    #[test]
    fn two_term_sequence() {
        let f = FieldContext::with_prime(7).unwrap();
        let s = seq(&f, &[2, 4, 3, 0]);
        let g = min_poly(&f, &s);
        assert_eq!(g, Poly::from_u64(&f, &[3, 3, 1]));
        assert!(annihilates(&f, &g, &s));
    }

    #[test]
    fn zero_sequence() {
        let f = FieldContext::with_prime(7).unwrap();
        assert_eq!(min_poly(&f, &seq(&f, &[0, 0, 0, 0])), Poly::one(&f));
        assert_eq!(min_poly(&f, &[]), Poly::one(&f));
    }

    #[test]
    fn impulse_has_full_complexity() {
        let f = FieldContext::with_prime(7).unwrap();
        let s = seq(&f, &[0, 0, 0, 1]);
        let g = min_poly(&f, &s);
        assert_eq!(g.degree(), Some(4));
        assert!(annihilates(&f, &g, &s));
    }

    #[test]
    fn random_recurrences() {
        let f = FieldContext::with_prime(10_007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for t in 1..12 {
            // random sum of t geometric sequences has complexity t
            let nodes: Vec<Fe> = (0..t).map(|_| f.sample_nonzero(&mut rng)).collect();
            let coefs: Vec<Fe> = (0..t).map(|_| f.sample_nonzero(&mut rng)).collect();
            let s: Vec<Fe> = (0..2 * t)
                .map(|j| {
                    nodes.iter().zip(&coefs).fold(Fe::ZERO, |acc, (&a, &c)| {
                        f.mul_add(c, f.pow(a, j as u64), acc)
                    })
                })
                .collect();
            let g = min_poly(&f, &s);
            assert!(g.deg() <= t);
            assert!(annihilates(&f, &g, &s));
            for &a in &nodes {
                if g.deg() == t {
                    assert!(g.eval(&f, a).is_zero());
                }
            }
        }
    }
}
