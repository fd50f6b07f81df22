use super::Poly;
use crate::field::{Fe, FieldContext};

pub(super) const KARATSUBA_CUTOFF: usize = 32;

/// Quadratic product with lazily reduced accumulators.
pub fn mul_schoolbook(f: &FieldContext, a: &Poly, b: &Poly) -> Poly {
    Poly::from_coeffs(school(f, a.coeffs(), b.coeffs()))
}

fn school(f: &FieldContext, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() < b.len() { (a, b) } else { (b, a) };
    let budget = f.lazy_budget();
    let p = f.p() as u128;
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if i > 0 && i % budget == 0 {
            acc.iter_mut().for_each(|v| *v %= p);
        }
        let x = x.value() as u128;
        for (slot, &y) in acc[i..].iter_mut().zip(b) {
            *slot += x * y.value() as u128;
        }
    }
    acc.into_iter().map(|v| f.reduce_wide(v)).collect()
}

/// Karatsuba product, schoolbook below a fixed cutoff.
pub fn mul_karatsuba(f: &FieldContext, a: &Poly, b: &Poly) -> Poly {
    Poly::from_coeffs(kara(f, a.coeffs(), b.coeffs()))
}

fn add_into(f: &FieldContext, dst: &mut [Fe], src: &[Fe]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.add(*d, s);
    }
}

fn kara(f: &FieldContext, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return school(f, a, b);
    }
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    let h = long.len().div_ceil(2);
    if short.len() <= h {
        // unbalanced: split only the longer operand
        for (k, chunk) in long.chunks(short.len()).enumerate() {
            let part = kara(f, chunk, short);
            add_into(f, &mut out[k * short.len()..], &part);
        }
        return out;
    }
    let (a0, a1) = long.split_at(h);
    let (b0, b1) = short.split_at(h);
    let z0 = kara(f, a0, b0);
    let z2 = kara(f, a1, b1);
    let mut sa = a0.to_vec();
    add_into(f, &mut sa, a1);
    let mut sb = b0.to_vec();
    add_into(f, &mut sb, b1);
    let mut z1 = kara(f, &sa, &sb);
    for (i, v) in z1.iter_mut().enumerate() {
        let lo = z0.get(i).copied().unwrap_or(Fe::ZERO);
        let hi = z2.get(i).copied().unwrap_or(Fe::ZERO);
        *v = f.sub(f.sub(*v, lo), hi);
    }
    add_into(f, &mut out, &z0);
    add_into(f, &mut out[h..], &z1);
    add_into(f, &mut out[2 * h..], &z2);
    out
}

/// Product through a radix-2 transform, or `None` when the field lacks a
/// root of unity of sufficient power-of-two order.
pub fn mul_ntt(f: &FieldContext, a: &Poly, b: &Poly) -> Option<Poly> {
    if a.is_zero() || b.is_zero() {
        return Some(Poly::zero());
    }
    let len = a.coeffs().len() + b.coeffs().len() - 1;
    let log_n = len.next_power_of_two().trailing_zeros();
    let root = f.root_of_unity(log_n)?;
    let n = 1usize << log_n;
    let mut fa = a.coeffs().to_vec();
    fa.resize(n, Fe::ZERO);
    let mut fb = b.coeffs().to_vec();
    fb.resize(n, Fe::ZERO);
    transform(f, &mut fa, root);
    transform(f, &mut fb, root);
    for (x, &y) in fa.iter_mut().zip(&fb) {
        *x = f.mul(*x, y);
    }
    let root_inv = f.inv(root).ok()?;
    transform(f, &mut fa, root_inv);
    let n_inv = f.inv(f.elem(n as u64)).ok()?;
    fa.truncate(len);
    for x in fa.iter_mut() {
        *x = f.mul(*x, n_inv);
    }
    Some(Poly::from_coeffs(fa))
}

/// In-place iterative Cooley-Tukey; `root` must have order exactly `a.len()`.
fn transform(f: &FieldContext, a: &mut [Fe], root: Fe) {
    let n = a.len();
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            a.swap(i, j);
        }
    }
    let mut twiddles = Vec::with_capacity(n / 2);
    let mut len = 2;
    while len <= n {
        let w_len = f.pow(root, (n / len) as u64);
        twiddles.clear();
        let mut w = f.elem(1);
        for _ in 0..len / 2 {
            twiddles.push(w);
            w = f.mul(w, w_len);
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = f.mul(*v, w);
                *v = f.sub(*u, t);
                *u = f.add(*u, t);
            }
        }
        len <<= 1;
    }
}
