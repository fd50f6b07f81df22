//! Error correction drivers for matrix products and inverses.
//!
//! Both drivers keep a running correction `E` and repeatedly work on the
//! residual: the probe finds the rows where the residual is nonzero, each
//! such row is read as a sparse polynomial, `2s` evaluations of every row
//! are computed from the inputs, and batched sparse interpolation recovers
//! the rows that fit the per-row budget `s`. Rows that are still flagged
//! afterwards lose this iteration's additions. The guess `k` for the number
//! of errors starts at one and doubles whenever fewer than half of the rows
//! were recovered; once it exceeds `2n` per flagged row the driver gives up
//! and recomputes the answer densely.

use std::collections::{HashMap, HashSet};

use rand::Rng;

use crate::error::{Error, Result};
use crate::eval::diff_eval_with_powers;
use crate::field::{Fe, FieldContext};
use crate::interp::{multi_sparse_interp, CandidateSet, EvalBlock, Recovery};
use crate::matrix::{axpy, mat_mul, scale_row, Matrix, SparseMatrix};
use crate::probe::{find_nonzero_rows, FnBox, ProbeResult};

#[derive(Clone, Debug)]
pub struct CorrectionReport {
    /// Correction in the orientation of the inputs.
    pub e: SparseMatrix,
    /// Passes through the main loop.
    pub iterations: usize,
    /// Last guess for the number of errors.
    pub final_k: usize,
    pub orientation_flips: usize,
    /// Whether the answer was recomputed densely.
    pub fell_back: bool,
    pub eps_used: f64,
    /// Failure bound handed to each probe.
    pub probe_eps: f64,
}

/// `r` row indices of an `n x r` matrix whose rows form an invertible `X`,
/// together with `X^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentRowSelection {
    pub row_indices: Vec<usize>,
    pub x_inverse: Matrix,
}

/// Greedy, lexicographically first set of linearly independent rows.
pub fn select_independent_rows(f: &FieldContext, ap: &Matrix) -> Result<IndependentRowSelection> {
    let r = ap.cols();
    // echelon rows, each normalized to one at its pivot column
    let mut basis: Vec<(usize, Vec<Fe>)> = Vec::with_capacity(r);
    let mut chosen = Vec::with_capacity(r);
    for i in 0..ap.rows() {
        if chosen.len() == r {
            break;
        }
        let mut v = ap.row(i).to_vec();
        for (pc, brow) in &basis {
            if !v[*pc].is_zero() {
                let c = f.neg(v[*pc]);
                axpy(f, &mut v, c, brow);
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = f.inv(v[pc])?;
            scale_row(f, &mut v, inv);
            basis.push((pc, v));
            chosen.push(i);
        }
    }
    if chosen.len() < r {
        return Err(Error::RankDeficient {
            rank: chosen.len(),
            expected: r,
        });
    }
    let x = ap.submatrix_rows(&chosen)?;
    Ok(IndependentRowSelection {
        row_indices: chosen,
        x_inverse: x.inverse(f)?,
    })
}

/// One-sided check of `C = AB` with a single probe.
pub fn verify_product<R: Rng + ?Sized>(
    f: &FieldContext,
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    eps: f64,
    rng: &mut R,
) -> Result<bool> {
    check_product_shapes(a, b, c)?;
    let bb = FnBox::new(c.rows(), c.cols(), |v: &Matrix| {
        mat_mul(f, c, v)?.sub(f, &mat_mul(f, a, &mat_mul(f, b, v)?)?)
    });
    Ok(find_nonzero_rows(f, &bb, eps, rng)?.is_empty())
}

/// `C - AB`, computed densely.
pub fn product_error_oracle(f: &FieldContext, a: &Matrix, b: &Matrix, c: &Matrix) -> Result<SparseMatrix> {
    check_product_shapes(a, b, c)?;
    Ok(c.sub(f, &mat_mul(f, a, b)?)?.to_sparse())
}

/// `A^-1 - B`, computed densely.
pub fn inverse_error_oracle(f: &FieldContext, a: &Matrix, b: &Matrix) -> Result<SparseMatrix> {
    check_inverse_shapes(a, b)?;
    Ok(a.inverse(f)?.sub(f, b)?.to_sparse())
}

/// Finds `E` with `AB = C - E`, correct with probability at least `1 - eps`.
pub fn multiply_ec<R: Rng + ?Sized>(
    f: &FieldContext,
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    theta: Fe,
    eps: f64,
    rng: &mut R,
) -> Result<CorrectionReport> {
    check_product_shapes(a, b, c)?;
    check_eps(eps)?;
    let (m, n) = (c.rows(), c.cols());
    f.require_order(theta, m.max(n))?;
    let probe_eps = eps / (4 * ceil_log2(m * n) + 1) as f64;
    let mut problem = ProductProblem {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        e: SparseMatrix::new(m, n),
    };
    let mut report = drive(f, &mut problem, theta, probe_eps, rng)?;
    report.eps_used = eps;
    Ok(report)
}

/// Finds `E` with `A^-1 = B + E`, correct with probability at least `1 - eps`.
///
/// Invertibility of `A` is not checked upfront; a singular `A` surfaces as
/// [`Error::SingularInput`] only if the driver falls back to full inversion.
pub fn inverse_ec<R: Rng + ?Sized>(
    f: &FieldContext,
    a: &Matrix,
    b: &Matrix,
    theta: Fe,
    eps: f64,
    rng: &mut R,
) -> Result<CorrectionReport> {
    check_inverse_shapes(a, b)?;
    check_eps(eps)?;
    let n = a.rows();
    f.require_order(theta, n)?;
    let probe_eps = eps / (8 * ceil_log2(n) + 1) as f64;
    let mut problem = InverseProblem {
        a: a.clone(),
        b: b.clone(),
        e: SparseMatrix::new(n, n),
    };
    let mut report = drive(f, &mut problem, theta, probe_eps, rng)?;
    report.eps_used = eps;
    Ok(report)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("eps must lie in (0, 1), got {eps}")))
    }
}

fn check_product_shapes(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<()> {
    if a.cols() != b.rows() || a.rows() != c.rows() || b.cols() != c.cols() {
        return Err(Error::DimensionMismatch(format!(
            "A {}x{}, B {}x{}, C {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    Ok(())
}

fn check_inverse_shapes(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "A {}x{} and B {}x{} must be square of one size",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

fn ceil_log2(x: usize) -> usize {
    x.max(1).next_power_of_two().trailing_zeros() as usize
}

/// What the shared driver needs from a correction problem. All methods refer
/// to the current orientation, and `e` is the correction committed so far.
trait Problem {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn e(&self) -> &SparseMatrix;
    fn e_mut(&mut self) -> &mut SparseMatrix;
    /// Nonzero rows of the residual.
    fn probe_rows<R: Rng + ?Sized>(&self, f: &FieldContext, eps: f64, rng: &mut R) -> Result<ProbeResult>;
    /// Nonzero columns of the residual.
    fn probe_cols<R: Rng + ?Sized>(&self, f: &FieldContext, eps: f64, rng: &mut R) -> Result<ProbeResult>;
    /// `2s` evaluations of residual rows `rows`, or `None` if the selected
    /// rows cannot be isolated (only possible after a probe under-reported).
    fn evaluations(&self, f: &FieldContext, rows: &[usize], s: usize, powers: &[Fe]) -> Result<Option<Matrix>>;
    fn transpose(&mut self);
    /// Replaces `e` with the exact correction.
    fn recompute(&mut self, f: &FieldContext) -> Result<()>;
}

fn drive<P: Problem, R: Rng + ?Sized>(
    f: &FieldContext,
    p: &mut P,
    theta: Fe,
    probe_eps: f64,
    rng: &mut R,
) -> Result<CorrectionReport> {
    let powers = f.powers(theta, p.rows().max(p.cols()));
    let mut candidates: HashMap<usize, CandidateSet> = HashMap::new();
    let mut k = 1usize;
    let mut iterations = 0;
    let mut flips = 0;
    let mut fell_back = false;
    let mut flagged = p.probe_rows(f, probe_eps, rng)?.indices;

    while !flagged.is_empty() {
        iterations += 1;
        let cols = p.probe_cols(f, probe_eps, rng)?.indices;
        if cols.len() > flagged.len() {
            p.transpose();
            flips += 1;
            flagged = cols;
        }
        let r = flagged.len();
        let n = p.cols();
        let s = (2 * k.saturating_sub(p.e().nnz())).div_ceil(r).max(1);

        let mut added = Vec::new();
        if let Some(y) = p.evaluations(f, &flagged, s, &powers[..n])? {
            if !candidates.contains_key(&n) {
                candidates.insert(n, CandidateSet::full(f, theta, n)?);
            }
            let block = EvalBlock::new(y, s, n, theta)?;
            let recovered = multi_sparse_interp(f, &block, &candidates[&n])?;
            for (&row, rec) in flagged.iter().zip(&recovered) {
                if let Recovery::Recovered(poly) = rec {
                    added.extend(poly.terms().iter().map(|&(col, v)| (row, col, v)));
                }
            }
        }
        p.e_mut().add_triplets(f, &added)?;

        let remaining = p.probe_rows(f, probe_eps, rng)?.indices;
        if 2 * remaining.len() > r {
            k *= 2;
            if k >= 2 * n * remaining.len() {
                p.recompute(f)?;
                fell_back = true;
                break;
            }
        }
        let still: HashSet<usize> = remaining.iter().copied().collect();
        let undo: Vec<(usize, usize, Fe)> = added
            .iter()
            .filter(|t| still.contains(&t.0))
            .map(|&(i, j, v)| (i, j, f.neg(v)))
            .collect();
        p.e_mut().add_triplets(f, &undo)?;
        // keeps the remaining budget k - #E nonnegative
        k = k.max(p.e().nnz());
        flagged = remaining;
    }

    if flips % 2 == 1 {
        p.transpose();
    }
    Ok(CorrectionReport {
        e: p.e().clone(),
        iterations,
        final_k: k,
        orientation_flips: flips,
        fell_back,
        eps_used: 0.0,
        probe_eps,
    })
}

/// Rows of `m - e` at `rows`.
fn residual_rows(f: &FieldContext, m: &Matrix, e: &SparseMatrix, rows: &[usize]) -> Result<Matrix> {
    let mut out = m.submatrix_rows(rows)?;
    for (q, &i) in rows.iter().enumerate() {
        let dst = out.row_mut(q);
        for &(_, j, v) in e.row(i) {
            dst[j] = f.sub(dst[j], v);
        }
    }
    Ok(out)
}

/// Residual `C - E - AB`.
struct ProductProblem {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    e: SparseMatrix,
}

impl Problem for ProductProblem {
    fn rows(&self) -> usize {
        self.c.rows()
    }

    fn cols(&self) -> usize {
        self.c.cols()
    }

    fn e(&self) -> &SparseMatrix {
        &self.e
    }

    fn e_mut(&mut self) -> &mut SparseMatrix {
        &mut self.e
    }

    fn probe_rows<R: Rng + ?Sized>(&self, f: &FieldContext, eps: f64, rng: &mut R) -> Result<ProbeResult> {
        let bb = FnBox::new(self.rows(), self.cols(), |v: &Matrix| {
            let cv = mat_mul(f, &self.c, v)?.sub(f, &self.e.mul_dense(f, v)?)?;
            cv.sub(f, &mat_mul(f, &self.a, &mat_mul(f, &self.b, v)?)?)
        });
        find_nonzero_rows(f, &bb, eps, rng)
    }

    fn probe_cols<R: Rng + ?Sized>(&self, f: &FieldContext, eps: f64, rng: &mut R) -> Result<ProbeResult> {
        // (V^T (C - E) - (V^T A) B)^T
        let bb = FnBox::new(self.cols(), self.rows(), |v: &Matrix| {
            let vt = v.transpose();
            let left = mat_mul(f, &vt, &self.c)?.sub(f, &self.e.left_mul_dense(f, &vt)?)?;
            let right = mat_mul(f, &mat_mul(f, &vt, &self.a)?, &self.b)?;
            Ok(left.sub(f, &right)?.transpose())
        });
        find_nonzero_rows(f, &bb, eps, rng)
    }

    fn evaluations(&self, f: &FieldContext, rows: &[usize], s: usize, powers: &[Fe]) -> Result<Option<Matrix>> {
        let ap = self.a.submatrix_rows(rows)?;
        let cp = residual_rows(f, &self.c, &self.e, rows)?;
        diff_eval_with_powers(f, &ap, &self.b, &cp, powers, s).map(Some)
    }

    fn transpose(&mut self) {
        let a = self.a.transpose();
        self.a = self.b.transpose();
        self.b = a;
        self.c = self.c.transpose();
        self.e = self.e.transpose();
    }

    fn recompute(&mut self, f: &FieldContext) -> Result<()> {
        self.e = product_error_oracle(f, &self.a, &self.b, &self.c)?;
        Ok(())
    }
}

/// Residual `A^-1 - B - E`, observed through `(I - (B + E)A)` and `(I - A(B + E))`.
struct InverseProblem {
    a: Matrix,
    b: Matrix,
    e: SparseMatrix,
}

impl Problem for InverseProblem {
    fn rows(&self) -> usize {
        self.a.rows()
    }

    fn cols(&self) -> usize {
        self.a.cols()
    }

    fn e(&self) -> &SparseMatrix {
        &self.e
    }

    fn e_mut(&mut self) -> &mut SparseMatrix {
        &mut self.e
    }

    fn probe_rows<R: Rng + ?Sized>(&self, f: &FieldContext, eps: f64, rng: &mut R) -> Result<ProbeResult> {
        // residual times A, which has the same nonzero rows
        let n = self.rows();
        let bb = FnBox::new(n, n, |v: &Matrix| {
            let av = mat_mul(f, &self.a, v)?;
            let bav = mat_mul(f, &self.b, &av)?.add(f, &self.e.mul_dense(f, &av)?)?;
            v.sub(f, &bav)
        });
        find_nonzero_rows(f, &bb, eps, rng)
    }

    fn probe_cols<R: Rng + ?Sized>(&self, f: &FieldContext, eps: f64, rng: &mut R) -> Result<ProbeResult> {
        // A times the residual has the same nonzero columns; probe its transpose
        let n = self.rows();
        let bb = FnBox::new(n, n, |v: &Matrix| {
            let vt = v.transpose();
            let w = mat_mul(f, &vt, &self.a)?;
            let wb = mat_mul(f, &w, &self.b)?.add(f, &self.e.left_mul_dense(f, &w)?)?;
            Ok(vt.sub(f, &wb)?.transpose())
        });
        find_nonzero_rows(f, &bb, eps, rng)
    }

    fn evaluations(&self, f: &FieldContext, rows: &[usize], s: usize, powers: &[Fe]) -> Result<Option<Matrix>> {
        // With R the residual, A R = I - A(B + E) and A R = A[:, J] R[J, :].
        // Rows J' of A[:, J] forming an invertible X give
        // R[J, :] = X^-1 (I[J', :] - A[J', :] E - A[J', :] B).
        let sel = match select_independent_rows(f, &self.a.submatrix_cols(rows)?) {
            Ok(sel) => sel,
            Err(Error::RankDeficient { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let a2 = self.a.submatrix_rows(&sel.row_indices)?;
        let mut cp = self.e.left_mul_dense(f, &a2)?;
        for (q, &i) in sel.row_indices.iter().enumerate() {
            let row = cp.row_mut(q);
            for v in row.iter_mut() {
                *v = f.neg(*v);
            }
            row[i] = f.add(row[i], f.elem(1));
        }
        let y = diff_eval_with_powers(f, &a2, &self.b, &cp, powers, s)?;
        mat_mul(f, &sel.x_inverse, &y).map(Some)
    }

    fn transpose(&mut self) {
        self.a = self.a.transpose();
        self.b = self.b.transpose();
        self.e = self.e.transpose();
    }

    fn recompute(&mut self, f: &FieldContext) -> Result<()> {
        self.e = inverse_error_oracle(f, &self.a, &self.b)?;
        Ok(())
    }
}
