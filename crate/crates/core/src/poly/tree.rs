use super::{mul, rem, Poly, SMALL_CUTOFF};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};

/// Binary product tree. `levels[0]` holds the leaves; every node of
/// `levels[i]` is the product of its two children in `levels[i - 1]`, and an
/// unpaired last node is carried up unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTree {
    levels: Vec<Vec<Poly>>,
}

impl ProductTree {
    pub fn levels(&self) -> &[Vec<Poly>] {
        &self.levels
    }

    pub fn leaf_count(&self) -> usize {
        self.levels[0].len()
    }

    /// Number of levels above the leaves, `ceil(log2(leaf_count))`.
    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn root(&self) -> &Poly {
        &self.levels[self.levels.len() - 1][0]
    }

    pub fn node(&self, level: usize, idx: usize) -> &Poly {
        &self.levels[level][idx]
    }

    /// Leaf range `[lo, hi)` covered by a node.
    pub fn span(&self, level: usize, idx: usize) -> (usize, usize) {
        let lo = idx << level;
        (lo, ((idx + 1) << level).min(self.leaf_count()))
    }
}

pub fn build_product_tree(f: &FieldContext, leaves: Vec<Poly>) -> Result<ProductTree> {
    if leaves.is_empty() {
        return Err(Error::EmptyInput);
    }
    if leaves.iter().any(Poly::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let mut levels = vec![leaves];
    while levels.last().unwrap().len() > 1 {
        let prev = levels.last().unwrap();
        let next = prev
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => mul(f, a, b),
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
        levels.push(next);
    }
    Ok(ProductTree { levels })
}

/// Evaluates `poly` at every point. Uses a remainder tree over a product
/// tree of the points, with Horner's rule on small subsets.
pub fn multipoint_eval(f: &FieldContext, poly: &Poly, points: &[Fe]) -> Vec<Fe> {
    if points.len() < SMALL_CUTOFF {
        return points.iter().map(|&x| poly.eval(f, x)).collect();
    }
    let leaves = points.iter().map(|&x| Poly::linear(f, x)).collect();
    let tree = build_product_tree(f, leaves).expect("nonempty linear leaves");
    multipoint_eval_with_tree(f, poly, points, &tree)
}

/// Like [`multipoint_eval`] with a prebuilt tree whose leaves are `x - points[i]`.
pub fn multipoint_eval_with_tree(
    f: &FieldContext,
    poly: &Poly,
    points: &[Fe],
    tree: &ProductTree,
) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; points.len()];
    let top = tree.height();
    descend(f, tree, points, top, 0, reduce(f, poly, tree.root()), &mut out);
    out
}

/// `poly mod leaf` for every leaf of `tree`.
pub fn remainder_tree(f: &FieldContext, poly: &Poly, tree: &ProductTree) -> Vec<Poly> {
    let mut level_rems = vec![reduce(f, poly, tree.root())];
    for level in (0..tree.height()).rev() {
        let nodes = &tree.levels()[level];
        level_rems = (0..nodes.len())
            .map(|j| reduce(f, &level_rems[j / 2], &nodes[j]))
            .collect();
    }
    level_rems
}

fn reduce(f: &FieldContext, a: &Poly, m: &Poly) -> Poly {
    if a.deg() < m.deg() {
        a.clone()
    } else {
        rem(f, a, m).expect("tree nodes are nonzero")
    }
}

fn descend(
    f: &FieldContext,
    tree: &ProductTree,
    points: &[Fe],
    level: usize,
    idx: usize,
    r: Poly,
    out: &mut [Fe],
) {
    let (lo, hi) = tree.span(level, idx);
    if level == 0 || hi - lo < SMALL_CUTOFF || r.is_constant() {
        for i in lo..hi {
            out[i] = r.eval(f, points[i]);
        }
        return;
    }
    let children = &tree.levels()[level - 1];
    for child in [2 * idx, 2 * idx + 1] {
        if child < children.len() {
            let rc = reduce(f, &r, &children[child]);
            descend(f, tree, points, level - 1, child, rc, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use crate::poly::tests::random_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn three_linear_leaves() {
        let f = FieldContext::with_prime(7).unwrap();
        let leaves = (1..=3).map(|r| Poly::linear(&f, f.elem(r))).collect();
        let tree = build_product_tree(&f, leaves).unwrap();
        assert_eq!(tree.root(), &Poly::from_u64(&f, &[1, 4, 1, 1]));
        assert_eq!(tree.height(), 2);
    }

    #[test]
    fn single_leaf_and_errors() {
        let f = FieldContext::with_prime(7).unwrap();
        let leaf = Poly::from_u64(&f, &[2, 5]);
        let tree = build_product_tree(&f, vec![leaf.clone()]).unwrap();
        assert_eq!(tree.root(), &leaf);
        assert_eq!(tree.height(), 0);
        assert!(matches!(build_product_tree(&f, vec![]), Err(Error::EmptyInput)));
        assert!(matches!(
            build_product_tree(&f, vec![Poly::zero()]),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn root_is_product_of_leaves() {
        let f = FieldContext::with_prime(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let count = rng.gen_range(1..20);
            let leaves: Vec<Poly> = (0..count)
                .map(|_| {
                    let len = rng.gen_range(2..6);
                    random_poly(&f, len, &mut rng)
                })
                .filter(|p| !p.is_zero())
                .collect();
            if leaves.is_empty() {
                continue;
            }
            let expect = leaves.iter().fold(Poly::one(&f), |acc, l| mul(&f, &acc, l));
            let tree = build_product_tree(&f, leaves.clone()).unwrap();
            assert_eq!(tree.root(), &expect);
            assert_eq!(tree.height(), leaves.len().next_power_of_two().trailing_zeros() as usize);
        }
    }

    #[test]
    fn small_multipoint() {
        let f = FieldContext::with_prime(7).unwrap();
        let p = Poly::from_u64(&f, &[1, 0, 1]);
        let pts: Vec<Fe> = (1..=3).map(|x| f.elem(x)).collect();
        assert_eq!(multipoint_eval(&f, &p, &pts), vec![f.elem(2), f.elem(5), f.elem(3)]);
        let c = Poly::constant(f.elem(4));
        assert_eq!(multipoint_eval(&f, &c, &pts), vec![f.elem(4); 3]);
    }

    #[test]
    fn remainders_at_leaves() {
        let f = FieldContext::with_prime(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..30 {
            let leaves: Vec<Poly> = (0..rng.gen_range(1..12))
                .map(|_| random_poly(&f, rng.gen_range(2..7), &mut rng))
                .filter(|p| !p.is_constant())
                .collect();
            if leaves.is_empty() {
                continue;
            }
            let p = random_poly(&f, rng.gen_range(0..60), &mut rng);
            let tree = build_product_tree(&f, leaves.clone()).unwrap();
            let want: Vec<Poly> = leaves.iter().map(|l| rem(&f, &p, l).unwrap()).collect();
            assert_eq!(remainder_tree(&f, &p, &tree), want);
        }
    }

    #[test]
    fn remainder_tree_matches_horner() {
        let f = FieldContext::with_prime(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let p = random_poly(&f, rng.gen_range(0..200), &mut rng);
            let pts: Vec<Fe> = (0..rng.gen_range(0..150)).map(|_| f.sample(&mut rng)).collect();
            let want: Vec<Fe> = pts.iter().map(|&x| p.eval(&f, x)).collect();
            assert_eq!(multipoint_eval(&f, &p, &pts), want);
        }
    }
}
