// Correction time against recomputation as the error count grows.

use std::error::Error;

use matrix_ec::bench::{bench_grid, CSV_HEADER};
use matrix_ec::instance::Pattern;
use matrix_ec::{FieldContext, DEFAULT_PRIME};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(DEFAULT_PRIME)?;
    let rows = bench_grid(&f, &[256], &[1, 16, 256], &[Pattern::Uniform], 2f64.powi(-30), 0)?;
    println!("{CSV_HEADER}");
    for row in &rows {
        println!("{}", row.csv_line());
        assert!(row.exact);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
