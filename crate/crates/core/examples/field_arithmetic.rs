// Prime-field arithmetic and the default evaluation base.

use std::error::Error;

use matrix_ec::{FieldContext, DEFAULT_PRIME};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(DEFAULT_PRIME)?;
    let (a, b) = (f.elem(123_456_789), f.elem(987_654_321));
    let prod = f.mul(a, b);
    println!("p = {}, theta = {} (order {})", f.p(), f.theta().value(), f.theta_order());
    println!("{} * {} = {}", a.value(), b.value(), prod.value());
    assert_eq!(f.div(prod, b)?, a);

    let small = FieldContext::with_prime(7)?;
    let powers: Vec<u64> = small.powers(small.theta(), 6).iter().map(|x| x.value()).collect();
    println!("powers of {} in GF(7): {:?}", small.theta().value(), powers);
    assert_eq!(powers, [1, 3, 2, 6, 4, 5]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
