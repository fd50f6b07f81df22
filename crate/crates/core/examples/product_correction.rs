// Correct a corrupted product C ~ AB without recomputing it.

use std::error::Error;

use matrix_ec::corrector::{multiply_ec, product_error_oracle};
use matrix_ec::instance::{corrupt, product_instance, Pattern};
use matrix_ec::{FieldContext, DEFAULT_PRIME};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(DEFAULT_PRIME)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (a, b, c) = product_instance(&f, 128, 128, 128, &mut rng)?;
    for pattern in Pattern::ALL {
        let (bad, delta) = corrupt(&f, &c, 40, pattern, &mut rng)?;
        let report = multiply_ec(&f, &a, &b, &bad, f.theta(), 2f64.powi(-30), &mut rng)?;
        println!(
            "{pattern:>9}: {} errors fixed in {} iterations (final k {}, flips {})",
            report.e.nnz(),
            report.iterations,
            report.final_k,
            report.orientation_flips
        );
        assert_eq!(report.e, delta);
        assert_eq!(report.e, product_error_oracle(&f, &a, &b, &bad)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
