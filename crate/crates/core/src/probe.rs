//! Monte Carlo identification of the nonzero rows of a matrix that is only
//! available through right-multiplication.
//!
//! A zero row stays zero under any product, so every reported row is
//! genuinely nonzero. A nonzero row survives one random column with
//! probability `1 - 1/p`; with `l = ceil(log_p(m / eps))` columns the union
//! bound over `m` rows keeps the chance of missing any row below `eps`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::matrix::{mat_mul, Matrix, SparseMatrix};

/// A linear operator known only through `V -> M V`.
pub trait BlackBox {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    /// `M V` for an `cols x l` block `V`.
    fn apply(&self, f: &FieldContext, v: &Matrix) -> Result<Matrix>;
}

impl BlackBox for Matrix {
    fn rows(&self) -> usize {
        Matrix::rows(self)
    }

    fn cols(&self) -> usize {
        Matrix::cols(self)
    }

    fn apply(&self, f: &FieldContext, v: &Matrix) -> Result<Matrix> {
        mat_mul(f, self, v)
    }
}

impl BlackBox for SparseMatrix {
    fn rows(&self) -> usize {
        SparseMatrix::rows(self)
    }

    fn cols(&self) -> usize {
        SparseMatrix::cols(self)
    }

    fn apply(&self, f: &FieldContext, v: &Matrix) -> Result<Matrix> {
        self.mul_dense(f, v)
    }
}

/// Black box backed by a closure.
pub struct FnBox<F> {
    rows: usize,
    cols: usize,
    apply: F,
}

impl<F> FnBox<F>
where
    F: Fn(&Matrix) -> Result<Matrix>,
{
    pub fn new(rows: usize, cols: usize, apply: F) -> Self {
        FnBox { rows, cols, apply }
    }
}

impl<F> BlackBox for FnBox<F>
where
    F: Fn(&Matrix) -> Result<Matrix>,
{
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn apply(&self, _f: &FieldContext, v: &Matrix) -> Result<Matrix> {
        (self.apply)(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    /// Strictly increasing row indices.
    pub indices: Vec<usize>,
    /// Number of random columns applied.
    pub columns: usize,
    /// Whether the column count was clamped to `m * n`.
    pub capped: bool,
}

impl ProbeResult {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// `ceil(log_p(m / eps))`, at least one, clamped to `m * n`.
pub fn probe_width(p: u64, m: usize, n: usize, eps: f64) -> (usize, bool) {
    let target = m.max(1) as f64 / eps;
    let base = p as f64;
    let mut width = (target.ln() / base.ln()).ceil().max(1.0) as usize;
    // guard against rounding in the logarithms
    while width > 1 && base.powi(width as i32 - 1) >= target {
        width -= 1;
    }
    while base.powi(width as i32) < target {
        width += 1;
    }
    let cap = (m * n).max(1);
    if width > cap {
        (cap, true)
    } else {
        (width, false)
    }
}

pub fn find_nonzero_rows<B, R>(
    f: &FieldContext,
    bb: &B,
    eps: f64,
    rng: &mut R,
) -> Result<ProbeResult>
where
    B: BlackBox + ?Sized,
    R: Rng + ?Sized,
{
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps must lie in (0, 1), got {eps}")));
    }
    let (m, n) = (bb.rows(), bb.cols());
    let (columns, capped) = probe_width(f.p(), m, n, eps);
    let v = Matrix::random(f, n, columns, rng);
    let out = bb.apply(f, &v)?;
    if out.rows() != m || out.cols() != columns {
        return Err(Error::ShapeMismatch(format!(
            "black box returned {}x{}, expected {m}x{columns}",
            out.rows(),
            out.cols()
        )));
    }
    Ok(ProbeResult {
        indices: out.nonzero_rows(),
        columns,
        capped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn width_formula() {
        assert_eq!(probe_width(101, 4, 10, 0.01), (2, false));
        assert_eq!(probe_width(2, 1, 1, 0.1), (1, true));
        assert_eq!(probe_width(2, 8, 8, 0.1), (7, false)); // 2^7 = 128 >= 80
        assert_eq!(probe_width(7, 1, 1, 0.5), (1, false));
        assert_eq!(probe_width(crate::field::DEFAULT_PRIME, 128, 128, 2f64.powi(-20)), (1, false));
    }

    #[test]
    fn zero_matrix_reports_nothing() {
        let f = FieldContext::with_prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (m, n) in [(1, 1), (5, 3), (3, 9)] {
            let r = find_nonzero_rows(&f, &Matrix::zeros(m, n), 0.01, &mut rng).unwrap();
            assert!(r.is_empty());
        }
    }

    #[test]
    fn finds_planted_rows() {
        let f = FieldContext::with_prime(crate::field::DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = SparseMatrix::from_triplets(
            &f,
            10,
            6,
            vec![(1, 0, f.elem(3)), (4, 5, f.elem(1)), (9, 2, f.elem(8))],
        )
        .unwrap();
        let r = find_nonzero_rows(&f, &s, 1e-9, &mut rng).unwrap();
        assert_eq!(r.indices, vec![1, 4, 9]);
        assert_eq!(r.columns, 2);
    }

    #[test]
    fn rejects_bad_eps() {
        let f = FieldContext::with_prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for eps in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(find_nonzero_rows(&f, &Matrix::zeros(2, 2), eps, &mut rng).is_err());
        }
    }

    #[test]
    fn closure_box_is_linear() {
        let f = FieldContext::with_prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Matrix::random(&f, 6, 5, &mut rng);
        let bb = FnBox::new(6, 5, |v: &Matrix| mat_mul(&f, &a, v));
        for _ in 0..20 {
            let v1 = Matrix::random(&f, 5, 3, &mut rng);
            let v2 = Matrix::random(&f, 5, 3, &mut rng);
            let lhs = bb.apply(&f, &v1.add(&f, &v2).unwrap()).unwrap();
            let rhs = bb.apply(&f, &v1).unwrap().add(&f, &bb.apply(&f, &v2).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
