//! Evaluations of the row polynomials of `C' - A'B` at `1, theta, ..., theta^(2s-1)`.
//!
//! Row `i` of a matrix is read as the polynomial whose coefficient of `x^j`
//! is entry `(i, j)`. Evaluating every row at the first `2s` powers of
//! `theta` is the product with `V[j][k] = theta^(jk)`, which is computed
//! here without forming either `A'B` or `V`:
//! `(C' - A'B)V = C'V - A'(BV)`, where `C'V` and `BV` are sparse transposed
//! Vandermonde products row by row.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::matrix::{mat_mul, plan_mul, Kernel, Matrix, Operand};
use crate::poly::tvand_apply_nodes;

/// Shape of an evaluation matrix `V[j][k] = theta^(jk)`, `n x 2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalMatrixSpec {
    pub theta: Fe,
    pub n: usize,
    pub s: usize,
}

impl EvalMatrixSpec {
    pub fn new(f: &FieldContext, theta: Fe, n: usize, s: usize) -> Result<Self> {
        f.require_order(theta, n)?;
        Ok(EvalMatrixSpec { theta, n, s })
    }

    /// `theta^j` for `j < n`.
    pub fn powers(&self, f: &FieldContext) -> Vec<Fe> {
        f.powers(self.theta, self.n)
    }

    /// Explicit `V`, for testing.
    pub fn to_dense(&self, f: &FieldContext) -> Matrix {
        let mut v = Matrix::zeros(self.n, 2 * self.s);
        for (j, &base) in self.powers(f).iter().enumerate() {
            let mut cur = f.elem(1);
            for k in 0..2 * self.s {
                v.set(j, k, cur);
                cur = f.mul(cur, base);
            }
        }
        v
    }
}

/// Evaluates one dense row as a sparse polynomial.
fn eval_row(f: &FieldContext, row: &[Fe], powers: &[Fe], count: usize) -> Vec<Fe> {
    let (nodes, coeffs): (Vec<Fe>, Vec<Fe>) = row
        .iter()
        .zip(powers)
        .filter(|(c, _)| !c.is_zero())
        .map(|(&c, &x)| (x, c))
        .unzip();
    tvand_apply_nodes(f, &nodes, &coeffs, count)
}

/// `M V` for the rows in `which` (all rows when `None`); other rows stay zero.
fn eval_rows(f: &FieldContext, m: &Matrix, powers: &[Fe], count: usize, which: Option<&[usize]>) -> Matrix {
    let all: Vec<usize>;
    let idx = match which {
        Some(w) => w,
        None => {
            all = (0..m.rows()).collect();
            &all
        }
    };
    let evaluated: Vec<(usize, Vec<Fe>)> = idx
        .par_iter()
        .map(|&i| (i, eval_row(f, m.row(i), powers, count)))
        .collect();
    let mut out = Matrix::zeros(m.rows(), count);
    for (i, vals) in evaluated {
        out.row_mut(i).copy_from_slice(&vals);
    }
    out
}

/// `(cp - ap * b) * V` with `V[j][k] = theta^(jk)`, `j < n`, `k < 2s`.
pub fn diff_eval<'a>(
    f: &FieldContext,
    ap: impl Into<Operand<'a>>,
    b: &Matrix,
    cp: &Matrix,
    theta: Fe,
    s: usize,
) -> Result<Matrix> {
    let spec = EvalMatrixSpec::new(f, theta, b.cols(), s)?;
    diff_eval_with_powers(f, ap, b, cp, &spec.powers(f), s)
}

/// Like [`diff_eval`] with `theta^j` (`j < n`) precomputed, so a caller
/// running many evaluations against the same `theta` pays for it once.
pub fn diff_eval_with_powers<'a>(
    f: &FieldContext,
    ap: impl Into<Operand<'a>>,
    b: &Matrix,
    cp: &Matrix,
    powers: &[Fe],
    s: usize,
) -> Result<Matrix> {
    let ap = ap.into();
    let (r, l, n) = (ap.rows(), ap.cols(), b.cols());
    if b.rows() != l || cp.rows() != r || cp.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "A' {r}x{l}, B {}x{n}, C' {}x{}",
            b.rows(),
            cp.rows(),
            cp.cols()
        )));
    }
    if powers.len() < n {
        return Err(Error::DimensionMismatch(format!(
            "{} powers of theta for {n} columns",
            powers.len()
        )));
    }
    let count = 2 * s;
    let yc = eval_rows(f, cp, powers, count, None);
    let plan = plan_mul(r, l, count, ap.nnz());
    let yb = if plan.choice == Kernel::SparseLeft {
        // rows of BV that meet no nonzero column of A' are never read
        eval_rows(f, b, powers, count, Some(&ap.nonzero_cols()))
    } else {
        eval_rows(f, b, powers, count, None)
    };
    let yab = mat_mul(f, ap, &yb)?;
    yc.sub(f, &yab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SparseMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_by_one() {
        let f = FieldContext::new(7, 6).unwrap();
        let a = Matrix::from_rows(&f, &[[2]]).unwrap();
        let b = Matrix::from_rows(&f, &[[3]]).unwrap();
        let c = Matrix::from_rows(&f, &[[1]]).unwrap();
        let y = diff_eval(&f, &a, &b, &c, f.elem(3), 1).unwrap();
        assert_eq!(y, Matrix::from_rows(&f, &[[2, 2]]).unwrap());
    }

    #[test]
    fn exact_product_gives_zero() {
        let f = FieldContext::with_prime(crate::field::DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        let a = Matrix::random(&f, 5, 4, &mut rng);
        let b = Matrix::random(&f, 4, 9, &mut rng);
        let c = mat_mul(&f, &a, &b).unwrap();
        assert!(diff_eval(&f, &a, &b, &c, f.theta(), 3).unwrap().is_zero());
    }

    #[test]
    fn matches_explicit_evaluation_matrix() {
        let f = FieldContext::with_prime(crate::field::DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        for _ in 0..60 {
            let (r, l, n) = (rng.gen_range(1..20), rng.gen_range(1..20), rng.gen_range(1..20));
            let s = rng.gen_range(1..9);
            let b = Matrix::random(&f, l, n, &mut rng);
            let c = Matrix::random(&f, r, n, &mut rng);
            let mut a = Matrix::random(&f, r, l, &mut rng);
            if rng.gen_bool(0.5) {
                // mostly zero, to exercise the sparse-left path
                for i in 0..r {
                    for j in 0..l {
                        if rng.gen_bool(0.9) {
                            a.set(i, j, Fe::ZERO);
                        }
                    }
                }
            }
            let v = EvalMatrixSpec::new(&f, f.theta(), n, s).unwrap().to_dense(&f);
            let want = mat_mul(&f, &c.sub(&f, &mat_mul(&f, &a, &b).unwrap()).unwrap(), &v).unwrap();
            assert_eq!(diff_eval(&f, &a, &b, &c, f.theta(), s).unwrap(), want);
            let sa = a.to_sparse();
            assert_eq!(diff_eval(&f, &sa, &b, &c, f.theta(), s).unwrap(), want);
        }
    }

    #[test]
    fn column_zero_is_row_sum() {
        let f = FieldContext::with_prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let a = SparseMatrix::from_triplets(&f, 3, 2, vec![(0, 1, f.elem(4))]).unwrap();
        let b = Matrix::random(&f, 2, 6, &mut rng);
        let c = Matrix::random(&f, 3, 6, &mut rng);
        let y = diff_eval(&f, &a, &b, &c, f.theta(), 2).unwrap();
        let d = c.sub(&f, &a.mul_dense(&f, &b).unwrap()).unwrap();
        for i in 0..3 {
            let sum = d.row(i).iter().fold(Fe::ZERO, |acc, &x| f.add(acc, x));
            assert_eq!(y.get(i, 0), sum);
        }
    }

    #[test]
    fn errors() {
        let f = FieldContext::new(7, 6).unwrap();
        let a = Matrix::zeros(2, 3);
        assert!(matches!(
            diff_eval(&f, &a, &Matrix::zeros(2, 4), &Matrix::zeros(2, 4), f.theta(), 1),
            Err(Error::DimensionMismatch(_))
        ));
        // 2 has order 3 < n = 4
        assert!(matches!(
            diff_eval(&f, &a, &Matrix::zeros(3, 4), &Matrix::zeros(2, 4), f.elem(2), 1),
            Err(Error::OrderTooSmall { .. })
        ));
    }
}
