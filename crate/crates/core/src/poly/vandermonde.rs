//! Transposed Vandermonde products and solves.
//!
//! For nodes `a_i` and coefficients `c_i`, the transposed Vandermonde product
//! is `y_j = sum_i c_i * a_i^j`. Its generating function is the rational
//! series `sum_i c_i / (1 - a_i z) = N(z) / D(z)`, which gives both the fast
//! product (expand the series) and the fast solve (partial fractions).

use std::collections::HashSet;

use super::{
    add, build_product_tree, inv_series, mul, mul_trunc, multipoint_eval_with_tree, Poly,
    SMALL_CUTOFF,
};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};

/// Evaluates the sparse polynomial `sum c x^e` at `1, theta, ..., theta^(count-1)`.
pub fn tvand_apply(
    f: &FieldContext,
    support: &[(usize, Fe)],
    theta: Fe,
    count: usize,
) -> Result<Vec<Fe>> {
    let mut seen = HashSet::with_capacity(support.len());
    for &(e, _) in support {
        if !seen.insert(e) {
            return Err(Error::DuplicateExponent(e));
        }
    }
    let nodes: Vec<Fe> = support.iter().map(|&(e, _)| f.pow(theta, e as u64)).collect();
    let coeffs: Vec<Fe> = support.iter().map(|&(_, c)| c).collect();
    Ok(tvand_apply_nodes(f, &nodes, &coeffs, count))
}

/// Below this many nodes or outputs the direct double loop wins.
const FAST_APPLY_MIN: usize = 128;

/// `y_j = sum_i coeffs[i] * nodes[i]^j` for `j < count`. Direct double loop
/// when either side is small, series expansion otherwise.
pub fn tvand_apply_nodes(f: &FieldContext, nodes: &[Fe], coeffs: &[Fe], count: usize) -> Vec<Fe> {
    debug_assert_eq!(nodes.len(), coeffs.len());
    if nodes.len().min(count) < FAST_APPLY_MIN {
        return tvand_apply_naive(f, nodes, coeffs, count);
    }
    // Combine c/(1 - a z) fractions pairwise up a tree, truncating mod z^count.
    let mut fracs: Vec<(Poly, Poly)> = nodes
        .iter()
        .zip(coeffs)
        .map(|(&a, &c)| {
            (
                Poly::constant(c),
                Poly::from_coeffs(vec![f.elem(1), f.neg(a)]),
            )
        })
        .collect();
    while fracs.len() > 1 {
        fracs = fracs
            .chunks(2)
            .map(|pair| match pair {
                [(n1, d1), (n2, d2)] => (
                    add(f, &mul_trunc(f, n1, d2, count), &mul_trunc(f, n2, d1, count)),
                    mul_trunc(f, d1, d2, count),
                ),
                [x] => x.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    let (num, den) = fracs.pop().unwrap();
    let den_inv = inv_series(f, &den, count).expect("constant term is one");
    let series = mul_trunc(f, &num, &den_inv, count);
    (0..count).map(|j| series.coeff(j)).collect()
}

pub fn tvand_apply_naive(f: &FieldContext, nodes: &[Fe], coeffs: &[Fe], count: usize) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; count];
    for (&a, &c) in nodes.iter().zip(coeffs) {
        let mut term = c;
        for slot in out.iter_mut() {
            *slot = f.add(*slot, term);
            term = f.mul(term, a);
        }
    }
    out
}

fn check_nodes(roots: &[Fe], rhs: &[Fe]) -> Result<()> {
    if roots.len() != rhs.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} nodes but {} right-hand values",
            roots.len(),
            rhs.len()
        )));
    }
    let mut seen = HashSet::with_capacity(roots.len());
    if !roots.iter().all(|r| seen.insert(*r)) {
        return Err(Error::SingularSystem);
    }
    Ok(())
}

/// Solves `sum_i a_i * roots[i]^j = rhs[j]` for `j < t`.
///
/// With `L(z) = prod (z - r_i)`, `D = rev(L)` and `N = D * sum rhs_j z^j mod z^t`,
/// the solution is `a_i = rev(N)(r_i) / L'(r_i)`. Small systems, and systems
/// with a zero node, use Gaussian elimination instead.
pub fn tvand_solve(f: &FieldContext, roots: &[Fe], rhs: &[Fe]) -> Result<Vec<Fe>> {
    check_nodes(roots, rhs)?;
    let t = roots.len();
    if t < SMALL_CUTOFF || roots.iter().any(|r| r.is_zero()) {
        return tvand_solve_gauss(f, roots, rhs);
    }
    let tree = build_product_tree(f, roots.iter().map(|&r| Poly::linear(f, r)).collect())?;
    let lambda = tree.root();
    let den = lambda.reverse(t + 1);
    let rhs_poly = Poly::from_coeffs(rhs.to_vec());
    let num = mul(f, &den, &rhs_poly).truncate(t);
    let num_rev = num.reverse(t);
    let top = multipoint_eval_with_tree(f, &num_rev, roots, &tree);
    let bottom = multipoint_eval_with_tree(f, &lambda.derivative(f), roots, &tree);
    let bottom_inv = f.batch_inv(&bottom).map_err(|_| Error::SingularSystem)?;
    Ok(top
        .iter()
        .zip(&bottom_inv)
        .map(|(&x, &y)| f.mul(x, y))
        .collect())
}

/// Direct elimination on the `t x t` transposed Vandermonde matrix.
pub fn tvand_solve_gauss(f: &FieldContext, roots: &[Fe], rhs: &[Fe]) -> Result<Vec<Fe>> {
    check_nodes(roots, rhs)?;
    let t = roots.len();
    // augmented rows: [r_0^j, ..., r_{t-1}^j | rhs_j]
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(t);
    let mut cur = vec![f.elem(1); t];
    for &y in rhs {
        let mut row = cur.clone();
        row.push(y);
        rows.push(row);
        for (c, &r) in cur.iter_mut().zip(roots) {
            *c = f.mul(*c, r);
        }
    }
    for col in 0..t {
        let pivot = (col..t)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        rows.swap(col, pivot);
        let inv = f.inv(rows[col][col])?;
        for v in rows[col].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let neg = f.neg(row[col]);
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = f.mul_add(neg, pv, *v);
            }
        }
    }
    Ok(rows.into_iter().map(|r| r[t]).collect())
}
