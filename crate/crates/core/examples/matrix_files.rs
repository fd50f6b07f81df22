// The text matrix format, and a one-shot product check on parsed input.

use std::error::Error;

use matrix_ec::corrector::verify_product;
use matrix_ec::io::{format_sparse, parse_matrix};
use matrix_ec::{FieldContext, SparseMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(7)?;
    let a = parse_matrix(&f, "2 2 7 dense\n1 2\n3 4\n")?.into_dense();
    let b = parse_matrix(&f, "2 2 7\n0 0 1\n1 1 1\n0 0 0\n")?.into_dense();
    let c = parse_matrix(&f, "2 2 7 dense\n1 2\n3 5\n")?.into_dense();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let ok = verify_product(&f, &a, &b, &c, 1e-6, &mut rng)?;
    println!("C = AB? {ok}");
    assert!(!ok);

    let e = SparseMatrix::from_triplets(&f, 2, 2, vec![(1, 1, f.elem(1))])?;
    print!("{}", format_sparse(&f, &e));
    assert!(parse_matrix(&f, "2 2 7\n1 1 0\n0 0 0\n").is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
