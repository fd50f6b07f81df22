// Fast polynomial arithmetic: multiplication, division, trees and coprime bases.

use std::error::Error;

use matrix_ec::poly::{build_product_tree, coprime_basis, divrem, gcd, min_poly, mul, multipoint_eval, Poly};
use matrix_ec::{FieldContext, DEFAULT_PRIME};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FieldContext::with_prime(DEFAULT_PRIME)?;
    let a = Poly::from_u64(&f, &[1, 2, 3, 4]);
    let b = Poly::from_u64(&f, &[5, 6]);
    let ab = mul(&f, &a, &b);
    let (q, r) = divrem(&f, &ab, &b)?;
    assert_eq!(q, a);
    assert!(r.is_zero());
    println!("gcd(ab, b) has degree {}", gcd(&f, &ab, &b).deg());

    let points: Vec<_> = (0..5).map(|x| f.elem(x)).collect();
    let tree = build_product_tree(&f, points.iter().map(|&x| Poly::linear(&f, x)).collect())?;
    println!("prod (z - i) for i < 5 has degree {}", tree.root().deg());
    println!("a at 0..5: {:?}", multipoint_eval(&f, &a, &points).iter().map(|v| v.value()).collect::<Vec<_>>());

    let x1 = Poly::linear(&f, f.elem(1));
    let x2 = Poly::linear(&f, f.elem(2));
    let cb = coprime_basis(&f, &[mul(&f, &x1, &x2), mul(&f, &x1, &x1)])?;
    println!("coprime basis of {{(z-1)(z-2), (z-1)^2}}: {} factors, exponents {:?}", cb.basis.len(), cb.exponents);

    let fib: Vec<_> = [1u64, 1, 2, 3, 5, 8, 13, 21].iter().map(|&v| f.elem(v)).collect();
    let gamma = min_poly(&f, &fib);
    println!("Fibonacci recurrence polynomial has degree {}", gamma.deg());
    assert_eq!(gamma, Poly::from_u64(&f, &[DEFAULT_PRIME - 1, DEFAULT_PRIME - 1, 1]));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
