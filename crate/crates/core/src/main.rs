use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mertens_matrix::harness::format::{format_sig, labeled_grid};
use mertens_matrix::harness::{self, SweepConfig};
use mertens_matrix::matrices::{build, BuiltMatrix, MatrixKind};
use mertens_matrix::quotient::build_quotient;
use mertens_matrix::Result;

/// Mertens matrices: worked tables, identity checks, norm sweeps and plots.
#[derive(Parser)]
#[command(name = "mertens-matrix", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the worked tables for one n.
    Tables {
        #[arg(long)]
        n: u64,
    },
    /// Emit one matrix.
    Matrix {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every identity exhaustively for 1 <= n <= n-max.
    Verify {
        #[arg(long)]
        n_max: u64,
    },
    /// Compute norms over a range of n and write CSV.
    Sweep {
        /// Defaults to 5000.
        #[arg(long)]
        from: Option<u64>,
        /// Defaults to 100000, or 1000000 with --full.
        #[arg(long)]
        to: Option<u64>,
        /// Defaults to 5000.
        #[arg(long)]
        step: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Run up to 10^6 instead of 10^5.
        #[arg(long)]
        full: bool,
    },
    /// Plot sweep CSV columns against n as SVG.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        columns: String,
        #[arg(long)]
        normalize_at: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "T")]
    T,
    #[value(name = "U")]
    U,
    #[value(name = "M")]
    M,
    #[value(name = "Utilde")]
    Utilde,
    #[value(name = "Mtilde")]
    Mtilde,
}

impl From<Kind> for MatrixKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::T => MatrixKind::T,
            Kind::U => MatrixKind::U,
            Kind::M => MatrixKind::M,
            Kind::Utilde => MatrixKind::Utilde,
            Kind::Mtilde => MatrixKind::Mtilde,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Text,
}

/// Largest `n` the `matrix` subcommand will materialize.
const MATRIX_LIMIT: u64 = 100_000_000;

enum Outcome {
    Ok,
    Failed,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn matrix_cells(m: &BuiltMatrix) -> Vec<Vec<String>> {
    match m {
        BuiltMatrix::Int(m) => m
            .rows()
            .map(|r| r.iter().map(i64::to_string).collect())
            .collect(),
        BuiltMatrix::Real(m) => m
            .rows()
            .map(|r| r.iter().map(|&x| format_sig(x)).collect())
            .collect(),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Tables { n } => {
            let report = harness::dump_tables(n)?;
            emit(None, &report.to_string())?;
        }
        Command::Matrix {
            n,
            kind,
            format,
            out,
        } => {
            if n == 0 {
                return Err(mertens_matrix::Error::Config("n must be at least 1".into()));
            }
            if n > MATRIX_LIMIT {
                return Err(mertens_matrix::Error::TooLarge {
                    n,
                    limit: MATRIX_LIMIT,
                });
            }
            let qs = build_quotient(n);
            let m = build(kind.into(), &qs, None)?;
            let cells = matrix_cells(&m);
            let text = match format {
                Format::Csv => {
                    let mut buf = String::new();
                    for row in &cells {
                        buf.push_str(&row.join(","));
                        buf.push('\n');
                    }
                    buf
                }
                Format::Text => {
                    let labels: Vec<String> = qs.reps().iter().map(u64::to_string).collect();
                    labeled_grid("", &labels, &cells)
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Verify { n_max } => {
            let report = harness::verify_suite(n_max)?;
            print!("{report}");
            if !report.passed() {
                return Ok(Outcome::Failed);
            }
        }
        Command::Sweep {
            from,
            to,
            step,
            tol,
            seed,
            out,
            full,
        } => {
            let mut cfg = if full {
                SweepConfig::full()
            } else {
                SweepConfig::ci()
            };
            cfg.from = from.unwrap_or(cfg.from);
            cfg.to = to.unwrap_or(cfg.to);
            cfg.step = step.unwrap_or(cfg.step);
            if let Some(tol) = tol {
                cfg.power.tol = tol;
            }
            if let Some(seed) = seed {
                cfg.power.seed = seed;
            }
            let outcome = harness::sweep::sweep_to_file(&cfg, &out)?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            let bad = outcome.violations();
            eprintln!("wrote {} rows to {}", outcome.records.len(), out.display());
            if let Some(r) = bad.first() {
                eprintln!(
                    "FAIL: {} rows break |M(n)| <= |M_n| or norm positivity; first at n={} (M(n)={}, norm={})",
                    bad.len(),
                    r.n,
                    r.mertens_n,
                    r.norm_m
                );
                return Ok(Outcome::Failed);
            }
        }
        Command::Plot {
            input,
            columns,
            normalize_at,
            out,
        } => {
            let columns = harness::parse_columns(&columns)?;
            harness::render_plot(&input, &columns, normalize_at.map(|n| n as f64), &out)?;
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
