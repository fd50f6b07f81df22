// Locate the nonzero rows of an implicit matrix through products alone.

use std::error::Error;

use matrix_ec::probe::{find_nonzero_rows, FnBox};
use matrix_ec::{mat_mul, FieldContext, Matrix, DEFAULT_PRIME};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(DEFAULT_PRIME)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = Matrix::random(&f, 64, 64, &mut rng);
    let b = Matrix::random(&f, 64, 64, &mut rng);
    let mut c = mat_mul(&f, &a, &b)?;
    for (i, j) in [(3, 10), (41, 0), (41, 63)] {
        c.set(i, j, f.add(c.get(i, j), f.elem(1)));
    }
    // R = C - AB, applied without ever forming it
    let residual = FnBox::new(64, 64, |v: &Matrix| mat_mul(&f, &c, v)?.sub(&f, &mat_mul(&f, &a, &mat_mul(&f, &b, v)?)?));
    let found = find_nonzero_rows(&f, &residual, 1e-9, &mut rng)?;
    println!("probe width {}, rows {:?}", found.columns, found.indices);
    assert_eq!(found.indices, [3, 41]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
