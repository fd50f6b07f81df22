//! Timing of error correction against full recomputation.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corrector::multiply_ec;
use crate::error::Result;
use crate::field::FieldContext;
use crate::instance::{corrupt, product_instance, Pattern};
use crate::matrix::mat_mul;

pub const CSV_HEADER: &str = "n,k,pattern,t_correct_ms,t_recompute_ms,ratio";

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub pattern: Pattern,
    pub t_correct_ms: f64,
    pub t_recompute_ms: f64,
    /// Whether the correction matched the injected errors.
    pub exact: bool,
}

impl BenchRow {
    pub fn ratio(&self) -> f64 {
        self.t_correct_ms / self.t_recompute_ms
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.3},{:.3},{:.4}",
            self.n,
            self.k,
            self.pattern,
            self.t_correct_ms,
            self.t_recompute_ms,
            self.ratio()
        )
    }
}

/// One dense `n x n` instance with `k` injected errors; the instance depends
/// only on `(seed, n, k, pattern)`.
pub fn bench_point(f: &FieldContext, n: usize, k: usize, pattern: Pattern, eps: f64, seed: u64) -> Result<BenchRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ ((k as u64) << 8) ^ pattern as u64);
    let (a, b, c) = product_instance(f, n, n, n, &mut rng)?;
    let (bad, truth) = corrupt(f, &c, k, pattern, &mut rng)?;

    let start = Instant::now();
    let report = multiply_ec(f, &a, &b, &bad, f.theta(), eps, &mut rng)?;
    let t_correct_ms = start.elapsed().as_secs_f64() * 1e3;

    let start = Instant::now();
    let recomputed = bad.sub(f, &mat_mul(f, &a, &b)?)?;
    let t_recompute_ms = start.elapsed().as_secs_f64() * 1e3;
    std::hint::black_box(&recomputed);

    Ok(BenchRow {
        n,
        k,
        pattern,
        t_correct_ms,
        t_recompute_ms,
        exact: report.e == truth,
    })
}

/// Every combination of the grid, run one after another.
pub fn bench_grid(
    f: &FieldContext,
    ns: &[usize],
    ks: &[usize],
    patterns: &[Pattern],
    eps: f64,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        for &k in ks {
            for &pattern in patterns {
                rows.push(bench_point(f, n, k, pattern, eps, seed)?);
            }
        }
    }
    Ok(rows)
}
