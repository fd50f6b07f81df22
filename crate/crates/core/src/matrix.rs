//! Dense and sparse matrices over GF(p) and the multiplication kernels.
//!
//! Three kernels are available: a naive dense kernel with lazily reduced
//! 128-bit accumulators, a Strassen kernel that pads odd dimensions per
//! level, and a sparse-left kernel whose cost is proportional to the number
//! of nonzeros on the left. [`plan_mul`] picks one from the shapes alone.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};

/// Below this minimum dimension Strassen hands off to the naive kernel.
pub const STRASSEN_THRESHOLD: usize = 64;

/// Left operands with at most this many rows skip the transpose in [`mul_naive`].
const THIN_LEFT: usize = 8;

/// Effective matrix multiplication exponent of the fastest kernel (log2 7).
pub const OMEGA_EFF: f64 = 2.807_354_922_057_604;

/// Naive products above this many multiply-adds are split across threads.
const PAR_WORK: usize = 1 << 18;

/// Strassen levels at or above this size run their seven products in parallel.
const PAR_STRASSEN: usize = 256;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(f: &FieldContext, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = f.elem(1);
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Fe>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[u64]>>(f: &FieldContext, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(r.iter().map(|&v| f.elem(v)));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn random<R: Rng + ?Sized>(f: &FieldContext, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| f.sample(rng)).collect();
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Indices of rows with at least one nonzero entry.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&i| self.row(i).iter().any(|v| !v.is_zero()))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        const TILE: usize = 32;
        for i0 in (0..self.rows).step_by(TILE) {
            for j0 in (0..self.cols).step_by(TILE) {
                for i in i0..(i0 + TILE).min(self.rows) {
                    for j in j0..(j0 + TILE).min(self.cols) {
                        out.data[j * self.rows + i] = self.data[i * self.cols + j];
                    }
                }
            }
        }
        out
    }

    /// Stacks the listed rows, which must be strictly increasing.
    pub fn submatrix_rows(&self, idx: &[usize]) -> Result<Matrix> {
        check_index_set(idx, self.rows)?;
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Ok(Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        })
    }

    /// Keeps the listed columns, which must be strictly increasing.
    pub fn submatrix_cols(&self, idx: &[usize]) -> Result<Matrix> {
        check_index_set(idx, self.cols)?;
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(idx.iter().map(|&j| row[j]));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        })
    }

    pub fn add(&self, f: &FieldContext, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, f: &FieldContext, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(Fe, Fe) -> Fe) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut entries = Vec::new();
        for i in 0..self.rows {
            for (j, &v) in self.row(i).iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, v));
                }
            }
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Gauss-Jordan inversion.
    pub fn inverse(&self, f: &FieldContext) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(f, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::SingularInput)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let scale = f.inv(a.get(col, col))?;
            scale_row(f, a.row_mut(col), scale);
            scale_row(f, inv.row_mut(col), scale);
            let (pivot_a, pivot_inv) = (a.row(col).to_vec(), inv.row(col).to_vec());
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                axpy(f, a.row_mut(r), neg, &pivot_a);
                axpy(f, inv.row_mut(r), neg, &pivot_inv);
            }
        }
        Ok(inv)
    }

    /// Rank by row reduction of a copy.
    pub fn rank(&self, f: &FieldContext) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(pivot) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(pivot, rank);
            let inv = f.inv(a.get(rank, col)).expect("pivot is nonzero");
            scale_row(f, a.row_mut(rank), inv);
            let pivot_row = a.row(rank).to_vec();
            for r in rank + 1..a.rows {
                let factor = a.get(r, col);
                if !factor.is_zero() {
                    axpy(f, a.row_mut(r), f.neg(factor), &pivot_row);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Copies an `h x w` block starting at `(r0, c0)`, zero-filling past the edges.
    fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Matrix {
        let mut out = Matrix::zeros(h, w);
        let rows = self.rows.saturating_sub(r0).min(h);
        let cols = self.cols.saturating_sub(c0).min(w);
        for i in 0..rows {
            let src = &self.data[(r0 + i) * self.cols + c0..(r0 + i) * self.cols + c0 + cols];
            out.data[i * w..i * w + cols].copy_from_slice(src);
        }
        out
    }

    /// Adds `src` into this matrix at `(r0, c0)`, clipping at the edges.
    fn accumulate_block(&mut self, f: &FieldContext, r0: usize, c0: usize, src: &Matrix) {
        let rows = self.rows.saturating_sub(r0).min(src.rows);
        let cols = self.cols.saturating_sub(c0).min(src.cols);
        for i in 0..rows {
            let dst = &mut self.data[(r0 + i) * self.cols + c0..(r0 + i) * self.cols + c0 + cols];
            for (d, &s) in dst.iter_mut().zip(&src.data[i * src.cols..i * src.cols + cols]) {
                *d = f.add(*d, s);
            }
        }
    }
}

pub(crate) fn scale_row(f: &FieldContext, row: &mut [Fe], s: Fe) {
    for v in row {
        *v = f.mul(*v, s);
    }
}

/// `dst += s * src`
pub(crate) fn axpy(f: &FieldContext, dst: &mut [Fe], s: Fe, src: &[Fe]) {
    for (d, &x) in dst.iter_mut().zip(src) {
        *d = f.mul_add(s, x, *d);
    }
}

fn check_index_set(idx: &[usize], bound: usize) -> Result<()> {
    for w in idx.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidArgument(
                "index set must be strictly increasing".into(),
            ));
        }
    }
    if let Some(&last) = idx.last() {
        if last >= bound {
            return Err(Error::IndexOutOfRange { index: last, bound });
        }
    }
    Ok(())
}

/// Coordinate-format sparse matrix with entries sorted by `(row, col)`.
///
/// Zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Fe)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds from unordered triplets. Repeated coordinates are summed and
    /// zero results dropped.
    pub fn from_triplets(
        f: &FieldContext,
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, Fe)>,
    ) -> Result<Self> {
        for &(i, j, _) in &triplets {
            if i >= rows {
                return Err(Error::IndexOutOfRange { index: i, bound: rows });
            }
            if j >= cols {
                return Err(Error::IndexOutOfRange { index: j, bound: cols });
            }
        }
        triplets.sort_unstable_by_key(|&(i, j, _)| (i, j));
        Ok(SparseMatrix {
            rows,
            cols,
            entries: merge_sorted(f, triplets),
        })
    }

    pub fn identity(f: &FieldContext, n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, f.elem(1))).collect(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Fe)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        match self.entries.binary_search_by_key(&(i, j), |&(r, c, _)| (r, c)) {
            Ok(pos) => self.entries[pos].2,
            Err(_) => Fe::ZERO,
        }
    }

    /// Writes one coordinate; a zero value removes it.
    pub fn set(&mut self, i: usize, j: usize, v: Fe) -> Result<()> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange { index: i, bound: self.rows });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange { index: j, bound: self.cols });
        }
        match self.entries.binary_search_by_key(&(i, j), |&(r, c, _)| (r, c)) {
            Ok(pos) if v.is_zero() => {
                self.entries.remove(pos);
            }
            Ok(pos) => self.entries[pos].2 = v,
            Err(_) if v.is_zero() => {}
            Err(pos) => self.entries.insert(pos, (i, j, v)),
        }
        Ok(())
    }

    /// Adds a batch of triplets into the matrix in one merge pass.
    pub fn add_triplets(&mut self, f: &FieldContext, triplets: &[(usize, usize, Fe)]) -> Result<()> {
        if triplets.is_empty() {
            return Ok(());
        }
        let extra = SparseMatrix::from_triplets(f, self.rows, self.cols, triplets.to_vec())?;
        let mut merged = Vec::with_capacity(self.entries.len() + extra.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), extra.entries.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if (x.0, x.1) < (y.0, y.1) => *a.next().unwrap(),
                (Some(x), Some(y)) if (x.0, x.1) > (y.0, y.1) => *b.next().unwrap(),
                (Some(_), Some(_)) => {
                    let (x, y) = (a.next().unwrap(), b.next().unwrap());
                    (x.0, x.1, f.add(x.2, y.2))
                }
                (Some(_), None) => *a.next().unwrap(),
                (None, Some(_)) => *b.next().unwrap(),
                (None, None) => break,
            };
            if !next.2.is_zero() {
                merged.push(next);
            }
        }
        self.entries = merged;
        Ok(())
    }

    /// Entries of row `i`.
    pub fn row(&self, i: usize) -> &[(usize, usize, Fe)] {
        let lo = self.entries.partition_point(|e| e.0 < i);
        let hi = self.entries.partition_point(|e| e.0 <= i);
        &self.entries[lo..hi]
    }

    /// Rows that hold at least one entry.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.entries.iter().map(|e| e.0).collect();
        out.dedup();
        out
    }

    /// Columns that hold at least one entry, ascending.
    pub fn nonzero_cols(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.entries.iter().map(|e| e.1).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|&(i, j, v)| (j, i, v)).collect();
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for &(i, j, v) in &self.entries {
            out.set(i, j, v);
        }
        out
    }

    pub fn submatrix_rows(&self, idx: &[usize]) -> Result<SparseMatrix> {
        check_index_set(idx, self.rows)?;
        let mut entries = Vec::new();
        for (new_i, &i) in idx.iter().enumerate() {
            entries.extend(self.row(i).iter().map(|&(_, j, v)| (new_i, j, v)));
        }
        Ok(SparseMatrix {
            rows: idx.len(),
            cols: self.cols,
            entries,
        })
    }

    pub fn submatrix_cols(&self, idx: &[usize]) -> Result<SparseMatrix> {
        check_index_set(idx, self.cols)?;
        let entries = self
            .entries
            .iter()
            .filter_map(|&(i, j, v)| idx.binary_search(&j).ok().map(|nj| (i, nj, v)))
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: idx.len(),
            entries,
        })
    }

    /// `M v`, touching each stored entry once.
    pub fn mat_vec(&self, f: &FieldContext, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![Fe::ZERO; self.rows];
        for &(i, j, a) in &self.entries {
            out[i] = f.mul_add(a, v[j], out[i]);
        }
        Ok(out)
    }

    /// Sparse-left kernel: `self * b`.
    pub fn mul_dense(&self, f: &FieldContext, b: &Matrix) -> Result<Matrix> {
        if self.cols != b.rows {
            return Err(dim_err(self.rows, self.cols, b.rows, b.cols));
        }
        let n = b.cols;
        let mut out = Matrix::zeros(self.rows, n);
        let budget = f.lazy_budget();
        let mut acc = vec![0u128; n];
        let mut start = 0;
        while start < self.entries.len() {
            let i = self.entries[start].0;
            let end = start + self.entries[start..].partition_point(|e| e.0 == i);
            acc.iter_mut().for_each(|a| *a = 0);
            for (count, &(_, k, a)) in self.entries[start..end].iter().enumerate() {
                if count > 0 && count % budget == 0 {
                    for x in acc.iter_mut() {
                        *x %= f.p() as u128;
                    }
                }
                let a = a.value() as u128;
                for (x, bv) in acc.iter_mut().zip(b.row(k)) {
                    *x += a * bv.value() as u128;
                }
            }
            for (o, &x) in out.row_mut(i).iter_mut().zip(&acc) {
                *o = f.reduce_wide(x);
            }
            start = end;
        }
        Ok(out)
    }

    /// `d * self` for a dense left factor.
    pub fn left_mul_dense(&self, f: &FieldContext, d: &Matrix) -> Result<Matrix> {
        if d.cols != self.rows {
            return Err(dim_err(d.rows, d.cols, self.rows, self.cols));
        }
        let mut out = Matrix::zeros(d.rows, self.cols);
        for q in 0..d.rows {
            let drow = d.row(q);
            let orow = out.row_mut(q);
            for &(i, j, v) in &self.entries {
                orow[j] = f.mul_add(drow[i], v, orow[j]);
            }
        }
        Ok(out)
    }
}

fn merge_sorted(f: &FieldContext, sorted: Vec<(usize, usize, Fe)>) -> Vec<(usize, usize, Fe)> {
    let mut out: Vec<(usize, usize, Fe)> = Vec::with_capacity(sorted.len());
    for (i, j, v) in sorted {
        match out.last_mut() {
            Some(last) if last.0 == i && last.1 == j => last.2 = f.add(last.2, v),
            _ => out.push((i, j, v)),
        }
    }
    out.retain(|e| !e.2.is_zero());
    out
}

fn dim_err(m: usize, l: usize, l2: usize, n: usize) -> Error {
    Error::DimensionMismatch(format!("cannot multiply {m}x{l} by {l2}x{n}"))
}

/// Left factor of a product: dense or sparse.
#[derive(Clone, Copy, Debug)]
pub enum Operand<'a> {
    Dense(&'a Matrix),
    Sparse(&'a SparseMatrix),
}

impl Operand<'_> {
    pub fn rows(&self) -> usize {
        match self {
            Operand::Dense(m) => m.rows,
            Operand::Sparse(s) => s.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Operand::Dense(m) => m.cols,
            Operand::Sparse(s) => s.cols,
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            Operand::Dense(m) => m.nnz(),
            Operand::Sparse(s) => s.nnz(),
        }
    }

    /// Indices of columns holding a nonzero.
    pub fn nonzero_cols(&self) -> Vec<usize> {
        match self {
            Operand::Dense(m) => {
                let mut used = vec![false; m.cols];
                for i in 0..m.rows {
                    for (j, v) in m.row(i).iter().enumerate() {
                        used[j] |= !v.is_zero();
                    }
                }
                (0..m.cols).filter(|&j| used[j]).collect()
            }
            Operand::Sparse(s) => s.nonzero_cols(),
        }
    }
}

impl<'a> From<&'a Matrix> for Operand<'a> {
    fn from(m: &'a Matrix) -> Self {
        Operand::Dense(m)
    }
}

impl<'a> From<&'a SparseMatrix> for Operand<'a> {
    fn from(s: &'a SparseMatrix) -> Self {
        Operand::Sparse(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    NaiveDense,
    Strassen,
    SparseLeft,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MulPlan {
    pub choice: Kernel,
    pub predicted_cost: f64,
}

/// Cost of a dense `m x l` by `l x n` product with blocked fast multiplication.
pub fn dense_cost(m: usize, l: usize, n: usize) -> f64 {
    let min = m.min(l).min(n);
    if min == 0 {
        return 0.0;
    }
    (m as f64) * (l as f64) * (n as f64) / (min as f64).powf(3.0 - OMEGA_EFF)
}

/// Picks a kernel for an `m x l` (with `nnz_left` nonzeros) times `l x n` product.
pub fn plan_mul(m: usize, l: usize, n: usize, nnz_left: usize) -> MulPlan {
    let dense = dense_cost(m, l, n);
    let sparse = nnz_left as f64 * n as f64;
    if sparse < dense {
        MulPlan {
            choice: Kernel::SparseLeft,
            predicted_cost: sparse,
        }
    } else if m.min(l).min(n) > STRASSEN_THRESHOLD {
        MulPlan {
            choice: Kernel::Strassen,
            predicted_cost: dense,
        }
    } else {
        MulPlan {
            choice: Kernel::NaiveDense,
            predicted_cost: (m * l * n) as f64,
        }
    }
}

/// Exact product with the kernel chosen by [`plan_mul`].
pub fn mat_mul<'a>(f: &FieldContext, a: impl Into<Operand<'a>>, b: &Matrix) -> Result<Matrix> {
    let a = a.into();
    if a.cols() != b.rows {
        return Err(dim_err(a.rows(), a.cols(), b.rows, b.cols));
    }
    let plan = plan_mul(a.rows(), a.cols(), b.cols, a.nnz());
    match (plan.choice, a) {
        (Kernel::SparseLeft, Operand::Sparse(s)) => s.mul_dense(f, b),
        (Kernel::SparseLeft, Operand::Dense(d)) => d.to_sparse().mul_dense(f, b),
        (Kernel::Strassen, Operand::Dense(d)) => mul_strassen(f, d, b),
        (Kernel::Strassen, Operand::Sparse(s)) => mul_strassen(f, &s.to_dense(), b),
        (Kernel::NaiveDense, Operand::Dense(d)) => mul_naive(f, d, b),
        (Kernel::NaiveDense, Operand::Sparse(s)) => mul_naive(f, &s.to_dense(), b),
    }
}

/// Schoolbook product with 128-bit accumulators.
pub fn mul_naive(f: &FieldContext, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(dim_err(a.rows, a.cols, b.rows, b.cols));
    }
    let (m, l, n) = (a.rows, a.cols, b.cols);
    let mut out = Matrix::zeros(m, n);
    if m == 0 || n == 0 {
        return Ok(out);
    }
    let budget = f.lazy_budget();
    let p = f.p() as u128;
    if m <= THIN_LEFT {
        // few left rows: stream over rows of b instead of transposing it
        let mut acc = vec![0u128; n];
        for (i, orow) in out.data.chunks_mut(n).enumerate() {
            acc.fill(0);
            for (k, x) in a.row(i).iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let x = x.value() as u128;
                for (s, y) in acc.iter_mut().zip(b.row(k)) {
                    *s += x * y.value() as u128;
                }
                if (k + 1) % budget == 0 {
                    acc.iter_mut().for_each(|s| *s %= p);
                }
            }
            for (o, s) in orow.iter_mut().zip(&acc) {
                *o = Fe::from_reduced((s % p) as u64);
            }
        }
        return Ok(out);
    }
    let bt = b.transpose();
    let fill_row = |i: usize, orow: &mut [Fe]| {
        let arow = a.row(i);
        for (j, o) in orow.iter_mut().enumerate() {
            let bcol = bt.row(j);
            let mut acc = 0u128;
            for (chunk_a, chunk_b) in arow.chunks(budget).zip(bcol.chunks(budget)) {
                for (x, y) in chunk_a.iter().zip(chunk_b) {
                    acc += x.value() as u128 * y.value() as u128;
                }
                acc %= p;
            }
            *o = Fe::from_reduced(acc as u64);
        }
    };
    if m * l * n >= PAR_WORK && m > 1 {
        out.data
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(i, orow)| fill_row(i, orow));
    } else {
        for (i, orow) in out.data.chunks_mut(n).enumerate() {
            fill_row(i, orow);
        }
    }
    Ok(out)
}

/// Strassen product. Rectangular inputs are tiled into square blocks of the
/// smallest dimension; each block product recurses with per-level even padding.
pub fn mul_strassen(f: &FieldContext, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    mul_strassen_with(f, a, b, STRASSEN_THRESHOLD)
}

pub fn mul_strassen_with(f: &FieldContext, a: &Matrix, b: &Matrix, threshold: usize) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(dim_err(a.rows, a.cols, b.rows, b.cols));
    }
    let threshold = threshold.max(1);
    let (m, l, n) = (a.rows, a.cols, b.cols);
    let t = m.min(l).min(n);
    if t <= threshold {
        return mul_naive(f, a, b);
    }
    if m == t && l == t && n == t {
        return Ok(strassen_rec(f, a, b, threshold));
    }
    let mut out = Matrix::zeros(m, n);
    for i0 in (0..m).step_by(t) {
        for j0 in (0..n).step_by(t) {
            for k0 in (0..l).step_by(t) {
                let (h, w, d) = ((m - i0).min(t), (n - j0).min(t), (l - k0).min(t));
                let ab = a.block(i0, k0, h, d);
                let bb = b.block(k0, j0, d, w);
                let prod = strassen_rec(f, &ab, &bb, threshold);
                out.accumulate_block(f, i0, j0, &prod);
            }
        }
    }
    Ok(out)
}

fn strassen_rec(f: &FieldContext, a: &Matrix, b: &Matrix, threshold: usize) -> Matrix {
    let (m, l, n) = (a.rows, a.cols, b.cols);
    if m.min(l).min(n) <= threshold {
        return mul_naive(f, a, b).expect("shapes checked by caller");
    }
    let (hm, hl, hn) = (m.div_ceil(2), l.div_ceil(2), n.div_ceil(2));
    let a11 = a.block(0, 0, hm, hl);
    let a12 = a.block(0, hl, hm, hl);
    let a21 = a.block(hm, 0, hm, hl);
    let a22 = a.block(hm, hl, hm, hl);
    let b11 = b.block(0, 0, hl, hn);
    let b12 = b.block(0, hn, hl, hn);
    let b21 = b.block(hl, 0, hl, hn);
    let b22 = b.block(hl, hn, hl, hn);

    let add = |x: &Matrix, y: &Matrix| x.add(f, y).expect("equal blocks");
    let sub = |x: &Matrix, y: &Matrix| x.sub(f, y).expect("equal blocks");
    let product = |idx: usize| -> Matrix {
        let (x, y) = match idx {
            0 => (add(&a11, &a22), add(&b11, &b22)),
            1 => (add(&a21, &a22), b11.clone()),
            2 => (a11.clone(), sub(&b12, &b22)),
            3 => (a22.clone(), sub(&b21, &b11)),
            4 => (add(&a11, &a12), b22.clone()),
            5 => (sub(&a21, &a11), add(&b11, &b12)),
            _ => (sub(&a12, &a22), add(&b21, &b22)),
        };
        strassen_rec(f, &x, &y, threshold)
    };
    let m_: Vec<Matrix> = if m.min(l).min(n) >= PAR_STRASSEN {
        (0..7).into_par_iter().map(product).collect()
    } else {
        (0..7).map(product).collect()
    };

    let c11 = add(&sub(&add(&m_[0], &m_[3]), &m_[4]), &m_[6]);
    let c12 = add(&m_[2], &m_[4]);
    let c21 = add(&m_[1], &m_[3]);
    let c22 = add(&add(&sub(&m_[0], &m_[1]), &m_[2]), &m_[5]);

    let mut out = Matrix::zeros(m, n);
    out.accumulate_block(f, 0, 0, &c11);
    out.accumulate_block(f, 0, hn, &c12);
    out.accumulate_block(f, hm, 0, &c21);
    out.accumulate_block(f, hm, hn, &c22);
    out
}
