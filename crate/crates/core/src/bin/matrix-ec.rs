use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use matrix_ec::bench::{bench_grid, CSV_HEADER};
use matrix_ec::corrector::{
    inverse_ec, inverse_error_oracle, multiply_ec, product_error_oracle, verify_product, CorrectionReport,
};
use matrix_ec::instance::{corrupt, inverse_instance, negate, product_instance, Pattern};
use matrix_ec::io::{read_matrix, write_dense, write_sparse};
use matrix_ec::{Error, FieldContext, Matrix, Result, DEFAULT_PRIME};

/// Detect and correct errors in matrix products and inverses over GF(p).
#[derive(Parser)]
#[command(name = "matrix-ec", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Prime modulus.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    p: u64,
    /// Failure probability bound.
    #[arg(long, global = true, default_value_t = 2f64.powi(-30))]
    eps: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Product,
    Inverse,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance (A, B and C = AB, or A and B = A^-1) into a directory.
    Gen {
        #[arg(long, default_value = "product")]
        mode: Mode,
        #[arg(long)]
        n: usize,
        /// Rows of A (product mode); defaults to n.
        #[arg(long)]
        m: Option<usize>,
        /// Inner dimension (product mode); defaults to n.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Add k nonzero errors to C (product mode) or B (inverse mode).
    Corrupt {
        #[arg(long, default_value = "product")]
        mode: Mode,
        #[arg(long)]
        in_b: Option<PathBuf>,
        #[arg(long)]
        in_c: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "uniform")]
        pattern: Pattern,
        #[arg(long)]
        out: PathBuf,
        /// Where the true error matrix goes; defaults to `<out>.truth`.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Check C = AB with one probe. Exit status 1 if C is certainly wrong.
    Verify {
        #[arg(long)]
        in_a: PathBuf,
        #[arg(long)]
        in_b: PathBuf,
        #[arg(long)]
        in_c: PathBuf,
    },
    /// Find E with AB = C - E.
    CorrectProduct {
        #[arg(long)]
        in_a: PathBuf,
        #[arg(long)]
        in_b: PathBuf,
        #[arg(long)]
        in_c: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find E with A^-1 = B + E.
    CorrectInverse {
        #[arg(long)]
        in_a: PathBuf,
        #[arg(long)]
        in_b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time correction against recomputation; prints CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [256usize])]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [16usize])]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "uniform")]
        pattern: Vec<Pattern>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the exact E densely.
    Oracle {
        #[arg(long, default_value = "product")]
        mode: Mode,
        #[arg(long)]
        in_a: PathBuf,
        #[arg(long)]
        in_b: PathBuf,
        #[arg(long)]
        in_c: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct Report {
    iterations: usize,
    final_k: usize,
    fell_back: bool,
    orientation_flips: usize,
    wall_ms: f64,
    nnz_e: usize,
}

impl Report {
    fn new(r: &CorrectionReport, start: Instant) -> Self {
        Report {
            iterations: r.iterations,
            final_k: r.final_k,
            fell_back: r.fell_back,
            orientation_flips: r.orientation_flips,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
            nnz_e: r.e.nnz(),
        }
    }
}

fn dense(f: &FieldContext, path: &Path) -> Result<Matrix> {
    Ok(read_matrix(f, path)?.into_dense())
}

fn required(path: &Option<PathBuf>, flag: &str) -> Result<PathBuf> {
    path.clone()
        .ok_or_else(|| Error::InvalidArgument(format!("{flag} is required here")))
}

fn print_report(report: &Report) {
    println!("{}", serde_json::to_string(report).expect("plain struct"));
}

/// Returns whether verification passed; only `verify` can report false.
fn run(cli: Cli) -> Result<bool> {
    let Common { p, eps, seed } = cli.common;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps must lie in (0, 1), got {eps}")));
    }
    let f = FieldContext::with_prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match cli.command {
        Command::Gen { mode, n, m, l, out } => {
            if n == 0 || m == Some(0) || l == Some(0) {
                return Err(Error::InvalidArgument("dimensions must be positive".into()));
            }
            std::fs::create_dir_all(&out)?;
            match mode {
                Mode::Product => {
                    let (a, b, c) = product_instance(&f, m.unwrap_or(n), l.unwrap_or(n), n, &mut rng)?;
                    write_dense(&f, out.join("A.txt"), &a)?;
                    write_dense(&f, out.join("B.txt"), &b)?;
                    write_dense(&f, out.join("C.txt"), &c)?;
                }
                Mode::Inverse => {
                    let (a, b) = inverse_instance(&f, n, &mut rng)?;
                    write_dense(&f, out.join("A.txt"), &a)?;
                    write_dense(&f, out.join("B.txt"), &b)?;
                }
            }
        }
        Command::Corrupt {
            mode,
            in_b,
            in_c,
            k,
            pattern,
            out,
            truth,
        } => {
            let input = match mode {
                Mode::Product => required(&in_c, "--in-c")?,
                Mode::Inverse => required(&in_b, "--in-b")?,
            };
            let clean = dense(&f, &input)?;
            let (bad, delta) = corrupt(&f, &clean, k, pattern, &mut rng)?;
            let e = match mode {
                Mode::Product => delta,
                Mode::Inverse => negate(&f, &delta),
            };
            let truth = truth.unwrap_or_else(|| {
                let mut t = out.clone().into_os_string();
                t.push(".truth");
                t.into()
            });
            write_dense(&f, &out, &bad)?;
            write_sparse(&f, &truth, &e)?;
        }
        Command::Verify { in_a, in_b, in_c } => {
            let (a, b, c) = (dense(&f, &in_a)?, dense(&f, &in_b)?, dense(&f, &in_c)?);
            let ok = verify_product(&f, &a, &b, &c, eps, &mut rng)?;
            println!("{}", if ok { "ok" } else { "mismatch" });
            return Ok(ok);
        }
        Command::CorrectProduct { in_a, in_b, in_c, out } => {
            let (a, b, c) = (dense(&f, &in_a)?, dense(&f, &in_b)?, dense(&f, &in_c)?);
            eprintln!("theta = {}", f.theta().value());
            let start = Instant::now();
            let rep = multiply_ec(&f, &a, &b, &c, f.theta(), eps, &mut rng)?;
            let report = Report::new(&rep, start);
            write_sparse(&f, &out, &rep.e)?;
            print_report(&report);
        }
        Command::CorrectInverse { in_a, in_b, out } => {
            let (a, b) = (dense(&f, &in_a)?, dense(&f, &in_b)?);
            eprintln!("theta = {}", f.theta().value());
            let start = Instant::now();
            let rep = inverse_ec(&f, &a, &b, f.theta(), eps, &mut rng)?;
            let report = Report::new(&rep, start);
            write_sparse(&f, &out, &rep.e)?;
            print_report(&report);
        }
        Command::Bench { n, k, pattern, out } => {
            let rows = bench_grid(&f, &n, &k, &pattern, eps, seed)?;
            let mut text = format!("{CSV_HEADER}\n");
            for row in &rows {
                text.push_str(&row.csv_line());
                text.push('\n');
                if !row.exact {
                    eprintln!("warning: n = {}, k = {}: correction was not exact", row.n, row.k);
                }
            }
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
        }
        Command::Oracle {
            mode,
            in_a,
            in_b,
            in_c,
            out,
        } => {
            let (a, b) = (dense(&f, &in_a)?, dense(&f, &in_b)?);
            let e = match mode {
                Mode::Product => product_error_oracle(&f, &a, &b, &dense(&f, &required(&in_c, "--in-c")?)?)?,
                Mode::Inverse => inverse_error_oracle(&f, &a, &b)?,
            };
            write_sparse(&f, &out, &e)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
