// Repair a corrupted inverse B ~ A^-1.

use std::error::Error;

use matrix_ec::corrector::inverse_ec;
use matrix_ec::instance::{corrupt, inverse_instance, Pattern};
use matrix_ec::{mat_mul, FieldContext, Matrix, DEFAULT_PRIME};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(DEFAULT_PRIME)?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (a, inv) = inverse_instance(&f, 48, &mut rng)?;
    let (bad, _) = corrupt(&f, &inv, 30, Pattern::Uniform, &mut rng)?;
    let report = inverse_ec(&f, &a, &bad, f.theta(), 2f64.powi(-30), &mut rng)?;
    let fixed = bad.add(&f, &report.e.to_dense())?;
    println!("{} entries repaired in {} iterations", report.e.nnz(), report.iterations);
    assert_eq!(mat_mul(&f, &a, &fixed)?, Matrix::identity(&f, 48));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
