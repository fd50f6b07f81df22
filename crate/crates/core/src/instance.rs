//! Random test instances and error injection.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::matrix::{mat_mul, Matrix, SparseMatrix};

/// Where injected errors land.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `k` cells anywhere.
    Uniform,
    /// `k` cells within `ceil(k / n)` consecutive rows.
    RowBand,
    /// `k` cells within a block of about `sqrt(k) x sqrt(k)`.
    Submatrix,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::Uniform, Pattern::RowBand, Pattern::Submatrix];
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::Uniform => "uniform",
            Pattern::RowBand => "row-band",
            Pattern::Submatrix => "submatrix",
        })
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Pattern::Uniform),
            "row-band" => Ok(Pattern::RowBand),
            "submatrix" => Ok(Pattern::Submatrix),
            _ => Err(Error::InvalidArgument(format!("unknown pattern {s:?}"))),
        }
    }
}

/// Draws `k` distinct cells of an `m x n` matrix following `pattern`, sorted.
pub fn error_positions<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    k: usize,
    pattern: Pattern,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>> {
    if k > m * n {
        return Err(Error::TooManyErrors { k, cells: m * n });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let (h, w) = match pattern {
        Pattern::Uniform => (m, n),
        Pattern::RowBand => (k.div_ceil(n), n),
        Pattern::Submatrix => {
            let side = (k as f64).sqrt().ceil() as usize;
            let (mut h, mut w) = (side.min(m), side.min(n));
            // a clamped side widens the other one
            if h * w < k {
                if h == m {
                    w = k.div_ceil(h).min(n);
                } else {
                    h = k.div_ceil(w).min(m);
                }
            }
            (h, w)
        }
    };
    let top = rng.gen_range(0..=m - h);
    let left = rng.gen_range(0..=n - w);
    let mut cells: Vec<(usize, usize)> = sample(rng, h * w, k)
        .into_iter()
        .map(|c| (top + c / w, left + c % w))
        .collect();
    cells.sort_unstable();
    Ok(cells)
}

/// Adds a uniform nonzero delta to `k` distinct entries and returns the
/// corrupted matrix and the deltas.
pub fn corrupt<R: Rng + ?Sized>(
    f: &FieldContext,
    m: &Matrix,
    k: usize,
    pattern: Pattern,
    rng: &mut R,
) -> Result<(Matrix, SparseMatrix)> {
    let cells = error_positions(m.rows(), m.cols(), k, pattern, rng)?;
    let mut out = m.clone();
    let mut deltas = Vec::with_capacity(k);
    for (i, j) in cells {
        let d = f.sample_nonzero(rng);
        out.set(i, j, f.add(out.get(i, j), d));
        deltas.push((i, j, d));
    }
    let deltas = SparseMatrix::from_triplets(f, m.rows(), m.cols(), deltas)?;
    Ok((out, deltas))
}

/// Random `A` (`m x l`), `B` (`l x n`) and `C = AB`.
pub fn product_instance<R: Rng + ?Sized>(
    f: &FieldContext,
    m: usize,
    l: usize,
    n: usize,
    rng: &mut R,
) -> Result<(Matrix, Matrix, Matrix)> {
    let a = Matrix::random(f, m, l, rng);
    let b = Matrix::random(f, l, n, rng);
    let c = mat_mul(f, &a, &b)?;
    Ok((a, b, c))
}

/// Draws attempts for an invertible matrix before giving up.
pub const INVERTIBLE_ATTEMPTS: usize = 100;

/// Random invertible `A` and `B = A^-1`.
pub fn inverse_instance<R: Rng + ?Sized>(f: &FieldContext, n: usize, rng: &mut R) -> Result<(Matrix, Matrix)> {
    for _ in 0..INVERTIBLE_ATTEMPTS {
        let a = Matrix::random(f, n, n, rng);
        match a.inverse(f) {
            Ok(b) => return Ok((a, b)),
            Err(Error::SingularInput) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SingularInput)
}

/// Entry-wise negation.
pub fn negate(f: &FieldContext, s: &SparseMatrix) -> SparseMatrix {
    let entries = s.entries().iter().map(|&(i, j, v)| (i, j, f.neg(v))).collect();
    SparseMatrix::from_triplets(f, s.rows(), s.cols(), entries).expect("same shape")
}
