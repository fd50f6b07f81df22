// The three multiplication kernels and how the planner picks between them.

use std::error::Error;

use matrix_ec::matrix::{mul_naive, mul_strassen};
use matrix_ec::{mat_mul, plan_mul, FieldContext, Matrix, SparseMatrix, DEFAULT_PRIME};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(DEFAULT_PRIME)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = Matrix::random(&f, 150, 150, &mut rng);
    let b = Matrix::random(&f, 150, 150, &mut rng);
    let naive = mul_naive(&f, &a, &b)?;
    assert_eq!(mul_strassen(&f, &a, &b)?, naive);
    println!("dense 150x150: {:?}", plan_mul(150, 150, 150, a.nnz()).choice);

    let diag = SparseMatrix::from_triplets(&f, 150, 150, (0..150).map(|i| (i, i, f.elem(2))).collect())?;
    let plan = plan_mul(150, 150, 150, diag.nnz());
    println!("diagonal left operand: {:?}", plan.choice);
    let scaled = mat_mul(&f, &diag, &b)?;
    assert_eq!(scaled.get(7, 9), f.add(b.get(7, 9), b.get(7, 9)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
