//! Prime field arithmetic and high-order element discovery.
//!
//! Elements are plain residues wrapped in [`Fe`]; all arithmetic goes through a
//! [`FieldContext`], which owns the modulus and a generator `theta` of the
//! multiplicative group. The generator is what the interpolation code uses to
//! turn column indices into distinct evaluation points.

use rand::Rng;

use crate::error::{Error, Result};

/// A residue in `[0, p)`. Only meaningful together with its [`FieldContext`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Wraps a value the caller already knows to be reduced.
    #[inline]
    pub(crate) fn from_reduced(v: u64) -> Fe {
        Fe(v)
    }
}

impl std::fmt::Display for Fe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// GF(p) together with a generator of its multiplicative group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    p: u64,
    theta: Fe,
    theta_order: u64,
    /// Distinct prime factors of p - 1.
    group_factors: Vec<u64>,
}

/// The NTT-friendly default modulus 15 * 2^27 + 1.
pub const DEFAULT_PRIME: u64 = 2_013_265_921;

impl FieldContext {
    /// Builds GF(p) and finds `theta` with multiplicative order at least `min_order`.
    ///
    /// The returned `theta` is the smallest primitive root, so its order is
    /// always `p - 1`.
    pub fn new(p: u64, min_order: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p - 1 < min_order {
            return Err(Error::OrderUnavailable { p, min_order });
        }
        let group_factors = distinct_prime_factors(p - 1);
        let mut ctx = FieldContext {
            p,
            theta: Fe::ONE,
            theta_order: 1,
            group_factors,
        };
        if p > 2 {
            let theta = (2..p)
                .map(Fe)
                .find(|&g| ctx.is_generator(g))
                .expect("every prime field has a primitive root");
            ctx.theta = theta;
            ctx.theta_order = p - 1;
        }
        Ok(ctx)
    }

    /// GF(p) with no requirement on the order of `theta`.
    pub fn with_prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn theta(&self) -> Fe {
        self.theta
    }

    #[inline]
    pub fn theta_order(&self) -> u64 {
        self.theta_order
    }

    /// Fails with [`Error::OrderTooSmall`] unless `theta` has order at least `required`.
    pub fn require_order(&self, theta: Fe, required: usize) -> Result<()> {
        let order = self.order_of(theta).unwrap_or(0);
        if order < required as u64 {
            return Err(Error::OrderTooSmall {
                order,
                required: required as u64,
            });
        }
        Ok(())
    }

    fn is_generator(&self, g: Fe) -> bool {
        self.group_factors
            .iter()
            .all(|&q| self.pow(g, (self.p - 1) / q) != Fe::ONE)
    }

    /// Multiplicative order of `a`, or `None` for zero.
    pub fn order_of(&self, a: Fe) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        if a == self.theta {
            return Some(self.theta_order);
        }
        let mut order = self.p - 1;
        for &q in &self.group_factors {
            while order % q == 0 && self.pow(a, order / q) == Fe::ONE {
                order /= q;
            }
        }
        Some(order)
    }

    /// Largest `v` with `2^v | p - 1`.
    pub fn two_adicity(&self) -> u32 {
        (self.p - 1).trailing_zeros()
    }

    /// A primitive `2^log_n`-th root of unity, if the group has one.
    pub fn root_of_unity(&self, log_n: u32) -> Option<Fe> {
        if self.p == 2 || log_n > self.two_adicity() {
            return None;
        }
        Some(self.pow(self.theta, (self.p - 1) >> log_n))
    }

    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe(v % self.p)
    }

    pub fn elem_signed(&self, v: i64) -> Fe {
        let r = v.rem_euclid(self.p as i64);
        Fe(r as u64)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = a.0 + b.0;
        Fe(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        Fe(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64)
    }

    /// `a * b + c`
    #[inline]
    pub fn mul_add(&self, a: Fe, b: Fe, c: Fe) -> Fe {
        Fe(((a.0 as u128 * b.0 as u128 + c.0 as u128) % self.p as u128) as u64)
    }

    /// Reduces a wide accumulator.
    #[inline]
    pub fn reduce_wide(&self, v: u128) -> Fe {
        Fe((v % self.p as u128) as u64)
    }

    /// How many products of two reduced residues fit in a `u128` accumulator
    /// before it has to be reduced.
    pub fn lazy_budget(&self) -> usize {
        let max_product = (self.p as u128 - 1).pow(2).max(1);
        let budget = (u128::MAX - self.p as u128) / max_product;
        budget.min(usize::MAX as u128) as usize
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut old_r, mut r) = (a.0 as i128, self.p as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(Fe(old_s.rem_euclid(self.p as i128) as u64))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = self.elem(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Uniform sample from all of GF(p).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.p))
    }

    /// Uniform sample from the nonzero elements.
    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.p))
    }

    /// Inverts every entry with a single field inversion.
    pub fn batch_inv(&self, values: &[Fe]) -> Result<Vec<Fe>> {
        let mut prefix = Vec::with_capacity(values.len());
        let mut acc = self.elem(1);
        for &v in values {
            if v.is_zero() {
                return Err(Error::DivisionByZero);
            }
            prefix.push(acc);
            acc = self.mul(acc, v);
        }
        let mut inv_acc = self.inv(acc)?;
        let mut out = vec![Fe::ZERO; values.len()];
        for i in (0..values.len()).rev() {
            out[i] = self.mul(inv_acc, prefix[i]);
            inv_acc = self.mul(inv_acc, values[i]);
        }
        Ok(out)
    }

    /// `[1, a, a^2, ..., a^(count-1)]`
    pub fn powers(&self, a: Fe, count: usize) -> Vec<Fe> {
        let mut out = Vec::with_capacity(count);
        let mut cur = self.elem(1);
        for _ in 0..count {
            out.push(cur);
            cur = self.mul(cur, a);
        }
        out
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Miller-Rabin with the first twelve prime bases, which is exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho; `n` must be composite and odd.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut power = 1u64;
        let mut lam = 1u64;
        while d == 1 {
            if power == lam {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Distinct prime factors of `n`, ascending. Trial division strips small
/// primes, Pollard rho handles whatever is left.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q < 1000 && q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factor_into(n, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}
