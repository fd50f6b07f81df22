//! Dense univariate polynomials over GF(p) and the building blocks of Prony
//! style sparse interpolation: minimal polynomials of sequences, product and
//! remainder trees, coprime bases and transposed Vandermonde systems.

mod basis;
mod ntt;
mod recurrence;
mod tree;
mod vandermonde;

pub use basis::{coprime_basis, CoprimeBasis};
pub use ntt::{mul_karatsuba, mul_ntt, mul_schoolbook};
pub use recurrence::min_poly;
pub use tree::{build_product_tree, multipoint_eval, multipoint_eval_with_tree, remainder_tree, ProductTree};
pub use vandermonde::{
    tvand_apply, tvand_apply_naive, tvand_apply_nodes, tvand_solve, tvand_solve_gauss,
};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};

/// Below this many points (or terms) the tree-based routines fall back to
/// direct loops.
pub const SMALL_CUTOFF: usize = 16;

/// Coefficients in ascending degree. The leading coefficient is never zero;
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(f: &FieldContext) -> Self {
        Poly::constant(f.elem(1))
    }

    pub fn constant(c: Fe) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_u64(f: &FieldContext, coeffs: &[u64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| f.elem(c)).collect())
    }

    /// `x - root`
    pub fn linear(f: &FieldContext, root: Fe) -> Self {
        Poly {
            coeffs: vec![f.neg(root), f.elem(1)],
        }
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn eval(&self, f: &FieldContext, x: Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.mul_add(acc, x, c))
    }

    pub fn monic(&self, f: &FieldContext) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = f.inv(lead)?;
        Ok(scale(f, self, inv))
    }

    /// Keeps the terms of degree below `n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::from_coeffs(self.coeffs[..n.min(self.coeffs.len())].to_vec())
    }

    /// `x^(len-1) * self(1/x)`, treating `self` as having exactly `len` coefficients.
    pub fn reverse(&self, len: usize) -> Poly {
        let mut c: Vec<Fe> = (0..len).map(|i| self.coeff(i)).collect();
        c.reverse();
        Poly::from_coeffs(c)
    }

    pub fn derivative(&self, f: &FieldContext) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.elem(i as u64)))
                .collect(),
        )
    }
}

pub fn add(f: &FieldContext, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::from_coeffs((0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
}

pub fn sub(f: &FieldContext, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::from_coeffs((0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect())
}

pub fn scale(f: &FieldContext, a: &Poly, s: Fe) -> Poly {
    Poly::from_coeffs(a.coeffs.iter().map(|&c| f.mul(c, s)).collect())
}

/// Exact product. Uses a number-theoretic transform when the field has a
/// large enough power-of-two root of unity, Karatsuba otherwise.
pub fn mul(f: &FieldContext, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let (la, lb) = (a.coeffs.len(), b.coeffs.len());
    if la.min(lb) < ntt::KARATSUBA_CUTOFF {
        return mul_schoolbook(f, a, b);
    }
    mul_ntt(f, a, b).unwrap_or_else(|| mul_karatsuba(f, a, b))
}

/// Product truncated below degree `n`.
pub fn mul_trunc(f: &FieldContext, a: &Poly, b: &Poly, n: usize) -> Poly {
    mul(f, &a.truncate(n), &b.truncate(n)).truncate(n)
}

/// Power series inverse of `a` modulo `x^n` by Newton iteration.
pub fn inv_series(f: &FieldContext, a: &Poly, n: usize) -> Result<Poly> {
    let a0 = f.inv(a.coeff(0))?;
    let mut g = Poly::constant(a0);
    let mut len = 1;
    let two = Poly::constant(f.elem(2));
    while len < n {
        len = (2 * len).min(n);
        let ag = mul_trunc(f, a, &g, len);
        g = mul_trunc(f, &g, &sub(f, &two, &ag), len);
    }
    Ok(g.truncate(n))
}

/// Quotient and remainder.
pub fn divrem(f: &FieldContext, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let db = b.degree().ok_or(Error::ZeroPolynomial)?;
    let Some(da) = a.degree() else {
        return Ok((Poly::zero(), Poly::zero()));
    };
    if da < db {
        return Ok((Poly::zero(), a.clone()));
    }
    let qlen = da - db + 1;
    if db < 64 || qlen < 64 {
        return divrem_schoolbook(f, a, b);
    }
    let ra = a.reverse(da + 1).truncate(qlen);
    let rb = b.reverse(db + 1);
    let q_rev = mul_trunc(f, &ra, &inv_series(f, &rb, qlen)?, qlen);
    let q = q_rev.reverse(qlen);
    let r = sub(f, a, &mul(f, &q, b)).truncate(db);
    Ok((q, r))
}

fn divrem_schoolbook(f: &FieldContext, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let db = b.deg();
    let lead_inv = f.inv(b.leading().ok_or(Error::ZeroPolynomial)?)?;
    let mut r = a.coeffs.clone();
    let qlen = r.len() - db;
    let mut q = vec![Fe::ZERO; qlen];
    for i in (0..qlen).rev() {
        let c = f.mul(r[i + db], lead_inv);
        q[i] = c;
        if c.is_zero() {
            continue;
        }
        let neg = f.neg(c);
        for (j, &bc) in b.coeffs.iter().enumerate() {
            r[i + j] = f.mul_add(neg, bc, r[i + j]);
        }
    }
    r.truncate(db);
    Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
}

pub fn rem(f: &FieldContext, a: &Poly, b: &Poly) -> Result<Poly> {
    Ok(divrem(f, a, b)?.1)
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(f: &FieldContext, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = rem(f, &x, &y).expect("divisor is nonzero");
        x = y;
        y = r;
    }
    if x.is_zero() {
        x
    } else {
        x.monic(f).expect("nonzero")
    }
}

/// `a / b` when `b` divides `a`, otherwise `None`.
pub fn exact_div(f: &FieldContext, a: &Poly, b: &Poly) -> Result<Option<Poly>> {
    let (q, r) = divrem(f, a, b)?;
    Ok(r.is_zero().then_some(q))
}
