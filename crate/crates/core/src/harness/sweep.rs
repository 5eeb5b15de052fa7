//! Norm growth sweeps over a range of `n`, written as CSV.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::arith::{mertens_at, MertensTable};
use crate::error::{Error, Result};
use crate::harness::format::format_sig;
use crate::matrices::{build_m, build_mtilde, build_t};
use crate::quotient::build_quotient;
use crate::spectral::{spectral_norm_symmetric, PowerIterationConfig};

pub const CSV_HEADER: [&str; 11] = [
    "n",
    "s",
    "mertens_n",
    "norm_M",
    "norm_Mtilde",
    "norm_T",
    "ratio_M_sqrt",
    "ratio_mertens_sqrt",
    "ratio_M_Mtilde",
    "ratio_T_sqrt",
    "converged",
];

/// Slack on `|M(n)| <= |M_n|`.
pub const MERTENS_BOUND_SLACK: f64 = 1e-6;

/// Below this `n` the norm ordering `T <= M <= Mtilde` is not monitored.
pub const ORDERING_FROM: u64 = 5000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepConfig {
    pub from: u64,
    pub to: u64,
    pub step: u64,
    pub power: PowerIterationConfig,
}

impl SweepConfig {
    pub fn new(from: u64, to: u64, step: u64) -> Self {
        SweepConfig {
            from,
            to,
            step,
            power: PowerIterationConfig::default(),
        }
    }

    /// 5000 to 100000 in steps of 5000.
    pub fn ci() -> Self {
        Self::new(5000, 100_000, 5000)
    }

    /// 5000 to 1000000 in steps of 5000.
    pub fn full() -> Self {
        Self::new(5000, 1_000_000, 5000)
    }

    pub fn validate(&self) -> Result<()> {
        if self.from == 0 {
            return Err(Error::Config("sweep must start at n >= 1".into()));
        }
        if self.from > self.to {
            return Err(Error::Config(format!(
                "start {} is above end {}",
                self.from, self.to
            )));
        }
        if self.step == 0 {
            return Err(Error::Config("step must be at least 1".into()));
        }
        if !(self.power.tol > 0.0 && self.power.tol.is_finite()) {
            return Err(Error::Tolerance);
        }
        Ok(())
    }

    pub fn values(&self) -> impl Iterator<Item = u64> {
        let step = self.step.max(1);
        (self.from..=self.to).step_by(step as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub n: u64,
    pub s: usize,
    pub mertens_n: i64,
    pub norm_m: f64,
    pub norm_mtilde: f64,
    pub norm_t: f64,
    pub ratio_m_sqrt: f64,
    pub ratio_mertens_sqrt: f64,
    pub ratio_m_mtilde: f64,
    pub ratio_t_sqrt: f64,
    pub converged: bool,
}

impl SweepRecord {
    pub fn satisfies_mertens_bound(&self) -> bool {
        (self.mertens_n.abs() as f64) <= self.norm_m + MERTENS_BOUND_SLACK
    }

    pub fn norms_positive(&self) -> bool {
        self.norm_m > 0.0 && self.norm_mtilde > 0.0 && self.norm_t > 0.0
    }

    pub fn norms_ordered(&self) -> bool {
        self.norm_t <= self.norm_m && self.norm_m <= self.norm_mtilde
    }

    fn csv_fields(&self) -> [String; 11] {
        [
            self.n.to_string(),
            self.s.to_string(),
            self.mertens_n.to_string(),
            format_sig(self.norm_m),
            format_sig(self.norm_mtilde),
            format_sig(self.norm_t),
            format_sig(self.ratio_m_sqrt),
            format_sig(self.ratio_mertens_sqrt),
            format_sig(self.ratio_m_mtilde),
            format_sig(self.ratio_t_sqrt),
            self.converged.to_string(),
        ]
    }
}

/// Computes one row; `mt` must cover `n`.
pub fn compute_record(
    n: u64,
    mt: &MertensTable,
    power: &PowerIterationConfig,
) -> Result<SweepRecord> {
    let qs = build_quotient(n);
    let mertens_n = mertens_at(mt, n)?;
    let m = build_m(&qs, mt)?;
    let norm_m = spectral_norm_symmetric(&m, power)?;
    let norm_mtilde = spectral_norm_symmetric(&build_mtilde(&qs), power)?;
    let norm_t = spectral_norm_symmetric(&build_t(&qs), power)?;
    let root = (n as f64).sqrt();
    Ok(SweepRecord {
        n,
        s: qs.size(),
        mertens_n,
        norm_m: norm_m.value,
        norm_mtilde: norm_mtilde.value,
        norm_t: norm_t.value,
        ratio_m_sqrt: norm_m.value / root,
        ratio_mertens_sqrt: mertens_n as f64 / root,
        ratio_m_mtilde: norm_m.value / norm_mtilde.value,
        ratio_t_sqrt: norm_t.value / root,
        converged: norm_m.converged && norm_mtilde.converged && norm_t.converged,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    /// Observations that do not fail the sweep: norm ordering, convergence.
    pub warnings: Vec<String>,
}

impl SweepOutcome {
    /// Records breaking a proved property: the Mertens bound or positivity.
    pub fn violations(&self) -> Vec<&SweepRecord> {
        self.records
            .iter()
            .filter(|r| !r.satisfies_mertens_bound() || !r.norms_positive())
            .collect()
    }
}

fn warnings_for(records: &[SweepRecord]) -> Vec<String> {
    let mut out = Vec::new();
    for r in records {
        if !r.converged {
            out.push(format!("n={}: a norm did not converge", r.n));
        }
        if r.n >= ORDERING_FROM && !r.norms_ordered() {
            out.push(format!(
                "n={}: norm ordering T <= M <= Mtilde fails ({} , {} , {})",
                r.n, r.norm_t, r.norm_m, r.norm_mtilde
            ));
        }
    }
    out
}

/// Computes every record with a worker pool, in ascending `n`.
pub fn run_sweep_with_table(cfg: &SweepConfig, mt: &MertensTable) -> Result<SweepOutcome> {
    cfg.validate()?;
    if mt.bound() < cfg.to {
        return Err(Error::Range {
            arg: cfg.to,
            bound: mt.bound(),
        });
    }
    let ns: Vec<u64> = cfg.values().collect();
    let records = ns
        .par_iter()
        .map(|&n| compute_record(n, mt, &cfg.power))
        .collect::<Result<Vec<_>>>()?;
    let warnings = warnings_for(&records);
    Ok(SweepOutcome { records, warnings })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let mt = MertensTable::up_to(cfg.to)?;
    run_sweep_with_table(cfg, &mt)
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for r in records {
        writer.write_record(r.csv_fields())?;
    }
    writer.flush()?;
    Ok(())
}

/// Runs the sweep and writes the CSV to `path`.
pub fn sweep_to_file(cfg: &SweepConfig, path: &Path) -> Result<SweepOutcome> {
    let outcome = run_sweep(cfg)?;
    let file = std::fs::File::create(path)?;
    write_csv(&outcome.records, std::io::BufWriter::new(file))?;
    Ok(outcome)
}
