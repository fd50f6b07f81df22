// Recover several sparse polynomials at once from 2s evaluations each.

use std::error::Error;

use matrix_ec::interp::{multi_sparse_interp, CandidateSet, EvalBlock};
use matrix_ec::poly::tvand_apply;
use matrix_ec::{FieldContext, Matrix};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(7)?;
    let (n, s) = (6, 2);
    let cands = CandidateSet::full(&f, f.theta(), n)?;
    let rows = [vec![(2, f.elem(5))], vec![(0, f.elem(1)), (4, f.elem(3))], vec![]];
    let mut y = Matrix::zeros(rows.len(), 2 * s);
    for (i, terms) in rows.iter().enumerate() {
        y.row_mut(i).copy_from_slice(&tvand_apply(&f, terms, f.theta(), 2 * s)?);
    }
    println!("evaluations of 5x^2 at theta^0..3: {:?}", y.row(0).iter().map(|v| v.value()).collect::<Vec<_>>());
    let block = EvalBlock::new(y, s, n, f.theta())?;
    for (i, rec) in multi_sparse_interp(&f, &block, &cands)?.iter().enumerate() {
        let terms: Vec<(usize, u64)> = rec.poly().expect("within budget").terms().iter().map(|&(e, c)| (e, c.value())).collect();
        println!("row {i}: {terms:?}");
        assert_eq!(terms.len(), rows[i].len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
