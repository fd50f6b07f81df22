//! Plain-text matrix files.
//!
//! Sparse: a header `m n p`, one line `i j v` per nonzero (0-based indices,
//! `v` in `[1, p)`), and a terminator line `0 0 0`.
//! Dense: a header `m n p dense` followed by `m` lines of `n` residues.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::matrix::{Matrix, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixFile {
    Dense(Matrix),
    Sparse(SparseMatrix),
}

impl MatrixFile {
    pub fn rows(&self) -> usize {
        match self {
            MatrixFile::Dense(m) => m.rows(),
            MatrixFile::Sparse(s) => s.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            MatrixFile::Dense(m) => m.cols(),
            MatrixFile::Sparse(s) => s.cols(),
        }
    }

    pub fn into_dense(self) -> Matrix {
        match self {
            MatrixFile::Dense(m) => m,
            MatrixFile::Sparse(s) => s.to_dense(),
        }
    }

    pub fn into_sparse(self) -> SparseMatrix {
        match self {
            MatrixFile::Dense(m) => m.to_sparse(),
            MatrixFile::Sparse(s) => s,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("not a nonnegative integer: {tok:?}")))
        })
        .collect()
}

/// Parses either format. The modulus in the header must equal `f.p()`.
pub fn parse_matrix(f: &FieldContext, text: &str) -> Result<MatrixFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let dense = match fields.as_slice() {
        [_, _, _] => false,
        [_, _, _, "dense"] => true,
        _ => return Err(parse_err(hline, "header must be `m n p` or `m n p dense`")),
    };
    let dims = numbers(hline, &fields[..3].join(" "))?;
    let (m, n, p) = (dims[0] as usize, dims[1] as usize, dims[2]);
    if p != f.p() {
        return Err(parse_err(hline, format!("file modulus {p} differs from {}", f.p())));
    }
    let residue = |line: usize, v: u64| -> Result<Fe> {
        if v >= p {
            Err(parse_err(line, format!("{v} is not a residue mod {p}")))
        } else {
            Ok(f.elem(v))
        }
    };

    if dense {
        let mut data = Vec::with_capacity(m * n);
        for row in 0..m {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| parse_err(hline + row + 1, format!("expected {m} rows")))?;
            let vals = numbers(ln, l)?;
            if vals.len() != n {
                return Err(parse_err(ln, format!("expected {n} entries, found {}", vals.len())));
            }
            for v in vals {
                data.push(residue(ln, v)?);
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content after the last row"));
        }
        return Ok(MatrixFile::Dense(Matrix::from_data(m, n, data)?));
    }

    let mut entries = Vec::new();
    let mut terminated = false;
    for (ln, l) in lines.by_ref() {
        let vals = numbers(ln, l)?;
        let [i, j, v] = vals[..] else {
            return Err(parse_err(ln, "expected `i j v`"));
        };
        if (i, j, v) == (0, 0, 0) {
            terminated = true;
            break;
        }
        if i as usize >= m || j as usize >= n {
            return Err(parse_err(ln, format!("index ({i}, {j}) outside {m}x{n}")));
        }
        if v == 0 {
            return Err(parse_err(ln, "explicit zero entry"));
        }
        entries.push((ln, i as usize, j as usize, residue(ln, v)?));
    }
    if !terminated {
        return Err(parse_err(text.lines().count(), "missing terminator `0 0 0`"));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after terminator"));
    }
    entries.sort_by_key(|e| (e.1, e.2));
    for w in entries.windows(2) {
        if (w[0].1, w[0].2) == (w[1].1, w[1].2) {
            return Err(parse_err(w[1].0, format!("duplicate entry ({}, {})", w[1].1, w[1].2)));
        }
    }
    let triplets = entries.into_iter().map(|(_, i, j, v)| (i, j, v)).collect();
    Ok(MatrixFile::Sparse(SparseMatrix::from_triplets(f, m, n, triplets)?))
}

pub fn format_sparse(f: &FieldContext, s: &SparseMatrix) -> String {
    let mut out = format!("{} {} {}\n", s.rows(), s.cols(), f.p());
    for &(i, j, v) in s.entries() {
        let _ = writeln!(out, "{i} {j} {}", v.value());
    }
    out.push_str("0 0 0\n");
    out
}

pub fn format_dense(f: &FieldContext, m: &Matrix) -> String {
    let mut out = format!("{} {} {} dense\n", m.rows(), m.cols(), f.p());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.value().to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix(f: &FieldContext, path: impl AsRef<Path>) -> Result<MatrixFile> {
    parse_matrix(f, &fs::read_to_string(path)?)
}

pub fn write_sparse(f: &FieldContext, path: impl AsRef<Path>, s: &SparseMatrix) -> Result<()> {
    Ok(fs::write(path, format_sparse(f, s))?)
}

pub fn write_dense(f: &FieldContext, path: impl AsRef<Path>, m: &Matrix) -> Result<()> {
    Ok(fs::write(path, format_dense(f, m))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_round_trip() {
        let f = FieldContext::with_prime(7).unwrap();
        let s = SparseMatrix::from_triplets(&f, 3, 4, vec![(2, 3, f.elem(6)), (0, 1, f.elem(2))]).unwrap();
        let text = format_sparse(&f, &s);
        assert_eq!(text, "3 4 7\n0 1 2\n2 3 6\n0 0 0\n");
        assert_eq!(parse_matrix(&f, &text).unwrap(), MatrixFile::Sparse(s));
    }

    #[test]
    fn dense_round_trip() {
        let f = FieldContext::with_prime(7).unwrap();
        let m = Matrix::from_rows(&f, &[[1, 0, 6], [3, 3, 0]]).unwrap();
        let text = format_dense(&f, &m);
        assert_eq!(text, "2 3 7 dense\n1 0 6\n3 3 0\n");
        assert_eq!(parse_matrix(&f, &text).unwrap(), MatrixFile::Dense(m));
    }

    #[test]
    fn empty_sparse() {
        let f = FieldContext::with_prime(7).unwrap();
        let got = parse_matrix(&f, "2 2 7\n0 0 0\n").unwrap();
        assert_eq!(got.into_dense(), Matrix::zeros(2, 2));
    }

    #[test]
    fn malformed_inputs() {
        let f = FieldContext::with_prime(7).unwrap();
        for bad in [
            "",
            "2 2\n0 0 0\n",
            "2 2 11\n0 0 0\n",
            "2 2 7\n0 1 3\n",
            "2 2 7\n5 0 1\n0 0 0\n",
            "2 2 7\n0 1 9\n0 0 0\n",
            "2 2 7\n0 1 3\n0 1 4\n0 0 0\n",
            "2 2 7\n0 1 x\n0 0 0\n",
            "2 2 7 dense\n1 2\n",
            "2 2 7 dense\n1 2\n3\n",
            "2 2 7 sparse\n0 0 0\n",
        ] {
            assert!(matches!(parse_matrix(&f, bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }
}
