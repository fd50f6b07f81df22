use super::{build_product_tree, exact_div, gcd, remainder_tree, Poly, ProductTree};
use crate::error::{Error, Result};
use crate::field::FieldContext;

/// Pairwise coprime, monic, nonconstant polynomials `basis[j]` and exponents
/// with `input[i] = unit * prod_j basis[j]^exponents[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeBasis {
    pub basis: Vec<Poly>,
    pub exponents: Vec<Vec<u32>>,
}

/// Coprime (gcd-free) basis.
///
/// Divide and conquer: the bases of the two halves of the input are merged
/// by locating, through a product tree over one side, the elements of the
/// other side that share a factor with it. Only such linked groups go
/// through pairwise refinement. Exponents are found the same way, by
/// descending a product tree over the basis and dividing out each hit.
pub fn coprime_basis(f: &FieldContext, polys: &[Poly]) -> Result<CoprimeBasis> {
    if polys.iter().any(Poly::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let mut inputs: Vec<Poly> = polys
        .iter()
        .filter(|p| !p.is_constant())
        .map(|p| p.monic(f))
        .collect::<Result<_>>()?;
    inputs.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
    inputs.dedup();
    let mut basis = build(f, inputs)?;
    basis.sort_by(|x, y| (x.deg(), x.coeffs()).cmp(&(y.deg(), y.coeffs())));

    let tree = (!basis.is_empty())
        .then(|| build_product_tree(f, basis.clone()))
        .transpose()?;
    let mut exponents = Vec::with_capacity(polys.len());
    for p in polys {
        let mut row = vec![0u32; basis.len()];
        if let (Some(tree), false) = (&tree, p.is_constant()) {
            let mut cur = p.clone();
            for j in sharers(f, tree, p) {
                while let Some(q) = exact_div(f, &cur, &basis[j])? {
                    row[j] += 1;
                    cur = q;
                }
            }
            debug_assert!(cur.is_constant(), "basis must cover every input");
        }
        exponents.push(row);
    }
    Ok(CoprimeBasis { basis, exponents })
}

const DIRECT_CUTOFF: usize = 8;

fn build(f: &FieldContext, polys: Vec<Poly>) -> Result<Vec<Poly>> {
    if polys.len() <= DIRECT_CUTOFF {
        return refine(f, polys);
    }
    let mut left = polys;
    let right = left.split_off(left.len() / 2);
    let left = build(f, left)?;
    let right = build(f, right)?;
    merge(f, left, right)
}

/// Coprime basis of the union of two coprime bases.
fn merge(f: &FieldContext, left: Vec<Poly>, right: Vec<Poly>) -> Result<Vec<Poly>> {
    if left.is_empty() || right.is_empty() {
        return Ok([left, right].concat());
    }
    let tree = build_product_tree(f, right.clone())?;
    // the right product modulo every left element, in one pass
    let rems = remainder_tree(f, tree.root(), &build_product_tree(f, left.clone())?);
    let offset = left.len();
    let mut parent: Vec<usize> = (0..offset + right.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, (a, r)) in left.iter().zip(&rems).enumerate() {
        let g = gcd(f, a, r);
        if g.is_constant() {
            continue;
        }
        for j in sharers(f, &tree, &g) {
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, offset + j));
            parent[ri] = rj;
        }
    }
    let all: Vec<Poly> = left.into_iter().chain(right).collect();
    let mut groups: std::collections::BTreeMap<usize, Vec<Poly>> = Default::default();
    for (i, p) in all.into_iter().enumerate() {
        groups.entry(root(&mut parent, i)).or_default().push(p);
    }
    let mut out = Vec::new();
    for group in groups.into_values() {
        if group.len() == 1 {
            out.extend(group);
        } else {
            out.extend(refine(f, group)?);
        }
    }
    Ok(out)
}

/// Leaves of `tree` that share a nontrivial factor with `a`.
fn sharers(f: &FieldContext, tree: &ProductTree, a: &Poly) -> Vec<usize> {
    let mut hits = Vec::new();
    let top = tree.height();
    descend(f, tree, top, 0, a, &mut hits);
    hits
}

fn descend(f: &FieldContext, tree: &ProductTree, level: usize, idx: usize, a: &Poly, hits: &mut Vec<usize>) {
    // common factors with a child divide the common factor with its parent
    let g = gcd(f, a, tree.node(level, idx));
    if g.is_constant() {
        return;
    }
    if level == 0 {
        hits.push(idx);
        return;
    }
    let width = tree.levels()[level - 1].len();
    for child in [2 * idx, 2 * idx + 1] {
        if child < width {
            descend(f, tree, level - 1, child, &g, hits);
        }
    }
}

/// Pairwise refinement, quadratic in the number of elements.
///
/// Elements wait in a queue; each one is tested against the current basis,
/// and on a nontrivial gcd `g` with some `b` the pair is replaced by
/// `g, a/g, b/g`. The total degree strictly drops on every split, so this
/// reaches a fixed point.
fn refine(f: &FieldContext, mut queue: Vec<Poly>) -> Result<Vec<Poly>> {
    queue.reverse();
    let mut basis: Vec<Poly> = Vec::new();
    'next: while let Some(a) = queue.pop() {
        for idx in 0..basis.len() {
            let g = gcd(f, &a, &basis[idx]);
            if g.is_constant() {
                continue;
            }
            let b = basis.swap_remove(idx);
            let a_rest = exact_div(f, &a, &g)?.expect("gcd divides");
            let b_rest = exact_div(f, &b, &g)?.expect("gcd divides");
            for part in [b_rest, a_rest, g] {
                if !part.is_constant() {
                    queue.push(part);
                }
            }
            continue 'next;
        }
        basis.push(a);
    }
    Ok(basis)
}
