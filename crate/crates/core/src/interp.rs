//! Batched root finding and batched sparse interpolation.
//!
//! A batch of `r` unknown polynomials, each with at most `s` terms and
//! exponents drawn from a known candidate set, is recovered from `2s`
//! evaluations per polynomial at `1, theta, ..., theta^(2s-1)`. Instead of a
//! discrete logarithm, every candidate power `theta^d` is tabulated once and
//! shared by the whole batch.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::matrix::Matrix;
use crate::poly::{
    build_product_tree, coprime_basis, min_poly, multipoint_eval, tvand_solve, Poly,
};

/// Possible exponents together with their images `theta^d`.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    theta: Fe,
    exponents: Vec<usize>,
    points: Vec<Fe>,
    lookup: HashMap<Fe, usize>,
}

impl CandidateSet {
    /// Fails if two exponents map to the same power of `theta`, which happens
    /// exactly when the order of `theta` is too small for the exponent range.
    pub fn new(f: &FieldContext, theta: Fe, mut exponents: Vec<usize>) -> Result<Self> {
        exponents.sort_unstable();
        for w in exponents.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateExponent(w[0]));
            }
        }
        let points: Vec<Fe> = exponents.iter().map(|&d| f.pow(theta, d as u64)).collect();
        Self::from_parts(f, theta, exponents, points)
    }

    /// All exponents `0..n`.
    pub fn full(f: &FieldContext, theta: Fe, n: usize) -> Result<Self> {
        let points = f.powers(theta, n);
        Self::from_parts(f, theta, (0..n).collect(), points)
    }

    fn from_parts(f: &FieldContext, theta: Fe, exponents: Vec<usize>, points: Vec<Fe>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(points.len());
        for (&d, &pt) in exponents.iter().zip(&points) {
            if lookup.insert(pt, d).is_some() {
                let required = exponents.last().map_or(0, |&e| e + 1);
                return Err(Error::OrderTooSmall {
                    order: f.order_of(theta).unwrap_or(0),
                    required: required as u64,
                });
            }
        }
        Ok(CandidateSet {
            theta,
            exponents,
            points,
            lookup,
        })
    }

    pub fn theta(&self) -> Fe {
        self.theta
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    /// `theta^d` for each exponent, in the same order.
    pub fn points(&self) -> &[Fe] {
        &self.points
    }

    pub fn exponent_of(&self, point: Fe) -> Option<usize> {
        self.lookup.get(&point).copied()
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

/// Sparse polynomial as strictly increasing `(exponent, nonzero coefficient)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparsePoly {
    terms: Vec<(usize, Fe)>,
}

impl SparsePoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sorts the terms and drops zero coefficients.
    pub fn from_terms(mut terms: Vec<(usize, Fe)>) -> Result<Self> {
        terms.retain(|t| !t.1.is_zero());
        terms.sort_unstable_by_key(|t| t.0);
        for w in terms.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateExponent(w[0].0));
            }
        }
        Ok(SparsePoly { terms })
    }

    pub fn terms(&self) -> &[(usize, Fe)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, f: &FieldContext, x: Fe) -> Fe {
        self.terms
            .iter()
            .fold(Fe::ZERO, |acc, &(e, c)| f.mul_add(c, f.pow(x, e as u64), acc))
    }
}

/// Outcome for one row of a batch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovery {
    Recovered(SparsePoly),
    /// The evaluations are not consistent with any polynomial inside the bounds.
    Failed,
}

impl Recovery {
    pub fn poly(&self) -> Option<&SparsePoly> {
        match self {
            Recovery::Recovered(p) => Some(p),
            Recovery::Failed => None,
        }
    }
}

/// Evaluations `Y[i][j] = f_i(theta^j)` for `j < 2s`.
#[derive(Clone, Debug)]
pub struct EvalBlock {
    pub y: Matrix,
    pub s: usize,
    pub n: usize,
    pub theta: Fe,
}

impl EvalBlock {
    pub fn new(y: Matrix, s: usize, n: usize, theta: Fe) -> Result<Self> {
        if y.cols() != 2 * s {
            return Err(Error::ShapeMismatch(format!(
                "{} evaluations per row, expected 2s = {}",
                y.cols(),
                2 * s
            )));
        }
        Ok(EvalBlock { y, s, n, theta })
    }

    pub fn r(&self) -> usize {
        self.y.rows()
    }
}

/// For each `minpolys[i]`, the candidate points that are roots of it, ascending.
///
/// Builds a coprime basis of the inputs, a product tree over the basis and
/// then walks the tree top-down, evaluating every node only at the surviving
/// roots of its parent.
pub fn find_roots(f: &FieldContext, candidates: &[Fe], minpolys: &[Poly]) -> Result<Vec<Vec<Fe>>> {
    let cb = coprime_basis(f, minpolys)?;
    if cb.basis.is_empty() || candidates.is_empty() {
        return Ok(vec![Vec::new(); minpolys.len()]);
    }
    let tree = build_product_tree(f, cb.basis.clone())?;
    let levels = tree.levels();
    let top = tree.height();
    let zeros_of = |p: &Poly, pts: &[Fe]| -> Vec<Fe> {
        multipoint_eval(f, p, pts)
            .into_iter()
            .zip(pts)
            .filter(|(v, _)| v.is_zero())
            .map(|(_, &x)| x)
            .collect()
    };
    let mut surviving: Vec<Vec<Fe>> = vec![zeros_of(tree.root(), candidates)];
    for level in (0..top).rev() {
        let nodes = &levels[level];
        let parents = &levels[level + 1];
        surviving = (0..nodes.len())
            .map(|j| {
                let parent_roots = &surviving[j / 2];
                if parent_roots.is_empty() {
                    Vec::new()
                } else if 2 * (j / 2) + 1 >= nodes.len() && parents[j / 2] == nodes[j] {
                    // carried node, identical to its parent
                    parent_roots.clone()
                } else {
                    zeros_of(&nodes[j], parent_roots)
                }
            })
            .collect();
    }
    Ok(cb
        .exponents
        .iter()
        .map(|row| {
            let mut roots: Vec<Fe> = row
                .iter()
                .zip(&surviving)
                .filter(|(&e, _)| e >= 1)
                .flat_map(|(_, s)| s.iter().copied())
                .collect();
            roots.sort_unstable();
            roots
        })
        .collect())
}

/// Recovers every row polynomial with at most `s` terms, exponents in the
/// candidate set and degree below `n`.
///
/// An all-zero row recovers as the zero polynomial. Rows whose minimal
/// polynomial exceeds degree `s`, does not split over the candidate points,
/// or yields a zero coefficient are reported as [`Recovery::Failed`].
pub fn multi_sparse_interp(
    f: &FieldContext,
    block: &EvalBlock,
    candidates: &CandidateSet,
) -> Result<Vec<Recovery>> {
    if candidates.theta() != block.theta {
        return Err(Error::ShapeMismatch(
            "candidate set was built for a different theta".into(),
        ));
    }
    if candidates.exponents().last().is_some_and(|&e| e >= block.n) {
        return Err(Error::ShapeMismatch(format!(
            "candidate exponents exceed the degree bound {}",
            block.n
        )));
    }
    let s = block.s;
    let minpolys: Vec<Poly> = (0..block.r()).map(|i| min_poly(f, block.y.row(i))).collect();
    let in_bounds: Vec<bool> = minpolys.iter().map(|g| g.deg() <= s).collect();
    let root_input: Vec<Poly> = minpolys
        .iter()
        .zip(&in_bounds)
        .map(|(g, &ok)| if ok { g.clone() } else { Poly::one(f) })
        .collect();
    let roots = find_roots(f, candidates.points(), &root_input)?;

    let mut out = Vec::with_capacity(block.r());
    for i in 0..block.r() {
        let degree = minpolys[i].deg();
        if !in_bounds[i] || roots[i].len() != degree {
            out.push(Recovery::Failed);
            continue;
        }
        let mut located: Vec<(usize, Fe)> = roots[i]
            .iter()
            .map(|&pt| (candidates.exponent_of(pt).expect("root came from candidates"), pt))
            .collect();
        located.sort_unstable_by_key(|t| t.0);
        let nodes: Vec<Fe> = located.iter().map(|t| t.1).collect();
        let coeffs = tvand_solve(f, &nodes, &block.y.row(i)[..degree])?;
        if coeffs.iter().any(|c| c.is_zero()) {
            out.push(Recovery::Failed);
            continue;
        }
        let terms = located.iter().map(|t| t.0).zip(coeffs).collect();
        out.push(Recovery::Recovered(SparsePoly { terms }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{mul, tvand_apply};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_linear_root() {
        let f = FieldContext::new(7, 6).unwrap();
        let cands = CandidateSet::full(&f, f.theta(), 3).unwrap();
        assert_eq!(cands.points(), &[f.elem(1), f.elem(3), f.elem(2)]);
        let g = Poly::linear(&f, f.elem(3));
        assert_eq!(
            find_roots(&f, cands.points(), &[g, Poly::one(&f)]).unwrap(),
            vec![vec![f.elem(3)], vec![]]
        );
    }

    #[test]
    fn two_roots_among_three() {
        let f = FieldContext::with_prime(7).unwrap();
        let g = mul(&f, &Poly::linear(&f, f.elem(1)), &Poly::linear(&f, f.elem(2)));
        let pts = [f.elem(1), f.elem(2), f.elem(4)];
        assert_eq!(find_roots(&f, &pts, &[g]).unwrap(), vec![vec![f.elem(1), f.elem(2)]]);
    }

    #[test]
    fn recovers_monomial() {
        let f = FieldContext::new(7, 6).unwrap();
        let theta = f.theta();
        let cands = CandidateSet::full(&f, theta, 3).unwrap();
        // f = 5x^2: f(1) = 5, f(3) = 45 = 3
        let y = Matrix::from_rows(&f, &[[5, 3]]).unwrap();
        let block = EvalBlock::new(y, 1, 3, theta).unwrap();
        let rec = multi_sparse_interp(&f, &block, &cands).unwrap();
        let want = SparsePoly::from_terms(vec![(2, f.elem(5))]).unwrap();
        assert_eq!(rec, vec![Recovery::Recovered(want.clone())]);
        assert_eq!(want.eval(&f, f.elem(1)), f.elem(5));
        assert_eq!(want.eval(&f, theta), f.elem(3));
    }

    #[test]
    fn zero_row_is_zero_polynomial() {
        let f = FieldContext::new(7, 6).unwrap();
        let cands = CandidateSet::full(&f, f.theta(), 6).unwrap();
        let block = EvalBlock::new(Matrix::zeros(1, 4), 2, 6, f.theta()).unwrap();
        let rec = multi_sparse_interp(&f, &block, &cands).unwrap();
        assert_eq!(rec, vec![Recovery::Recovered(SparsePoly::new())]);
    }

    #[test]
    fn too_many_terms_never_yields_out_of_set_exponents() {
        let f = FieldContext::new(31, 30).unwrap();
        let theta = f.theta();
        let cands = CandidateSet::full(&f, theta, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..200 {
            let t = rng.gen_range(3..10);
            let exps = rand::seq::index::sample(&mut rng, 16, t).into_vec();
            let support: Vec<(usize, Fe)> =
                exps.iter().map(|&e| (e, f.sample_nonzero(&mut rng))).collect();
            let y = tvand_apply(&f, &support, theta, 4).unwrap();
            let block = EvalBlock::new(Matrix::from_data(1, 4, y).unwrap(), 2, 16, theta).unwrap();
            if let Recovery::Recovered(p) = &multi_sparse_interp(&f, &block, &cands).unwrap()[0] {
                assert!(p.len() <= 2);
                assert!(p.terms().iter().all(|&(e, c)| e < 16 && !c.is_zero()));
            }
        }
    }

    #[test]
    fn shape_checks() {
        let f = FieldContext::new(31, 30).unwrap();
        assert!(matches!(
            EvalBlock::new(Matrix::zeros(2, 3), 2, 8, f.theta()),
            Err(Error::ShapeMismatch(_))
        ));
        let cands = CandidateSet::full(&f, f.theta(), 8).unwrap();
        let block = EvalBlock::new(Matrix::zeros(2, 4), 2, 4, f.theta()).unwrap();
        assert!(multi_sparse_interp(&f, &block, &cands).is_err());
    }

    #[test]
    fn collisions_are_rejected() {
        let f = FieldContext::new(7, 6).unwrap();
        // 2 has order 3 in GF(7)
        assert!(matches!(
            CandidateSet::full(&f, f.elem(2), 4),
            Err(Error::OrderTooSmall { order: 3, required: 4 })
        ));
        assert!(CandidateSet::new(&f, f.theta(), vec![1, 1]).is_err());
    }
}
