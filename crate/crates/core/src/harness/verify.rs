//! Exhaustive verification of the structural identities for every `n <= n_max`.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{convolve, project_sequence, regular_rep, unit_sequence, AlgebraVector};
use crate::arith::MertensTable;
use crate::dense::{IntMatrix, RealMatrix};
use crate::error::{Error, Result};
use crate::matrices::{build_m, build_mtilde, build_t, build_u, t_rho_basis, verify_tut};
use crate::quotient::{build_quotient, cardinality_formula, gap_ratio_max, QuotientStructure};
use crate::spectral::{spectral_norm_symmetric, Lcg, PowerIterationConfig};

/// Relative slack for the norm bracketing `max|a| <= |A| <= s max|a|`.
pub const BRACKET_TOLERANCE: f64 = 1e-9;

/// Names of the checks, in report order.
pub const CHECKS: [&str; 9] = [
    "involution",
    "cardinality",
    "gap_bound",
    "floor_lemma",
    "morphism_law",
    "unit_inverse",
    "tm_symmetry",
    "tut_identity",
    "bracketing",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n_max: u64,
    pub checks: Vec<CheckSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| !c.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verified 1 <= n <= {}", self.n_max)?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status} {:<13} {:>10} cases", c.name, c.cases)?;
            if c.failures > 0 {
                write!(f, ", {} failures", c.failures)?;
            }
            writeln!(f)?;
            if let Some(ex) = &c.first_counterexample {
                writeln!(f, "     first counterexample: {ex}")?;
            }
        }
        Ok(())
    }
}

/// Per-`n` tallies, in [`CHECKS`] order.
#[derive(Default)]
struct Tally {
    cases: [u64; CHECKS.len()],
    failures: [u64; CHECKS.len()],
    first: [Option<String>; CHECKS.len()],
}

impl Tally {
    fn record(&mut self, check: usize, ok: bool, describe: impl FnOnce() -> String) {
        self.cases[check] += 1;
        if !ok {
            self.failures[check] += 1;
            if self.first[check].is_none() {
                self.first[check] = Some(describe());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        for i in 0..CHECKS.len() {
            self.cases[i] += other.cases[i];
            self.failures[i] += other.failures[i];
            if self.first[i].is_none() {
                self.first[i] = other.first[i].clone();
            }
        }
    }
}

fn random_vector<'a>(qs: &'a QuotientStructure, rng: &mut Lcg) -> AlgebraVector<'a> {
    let coeffs = (0..qs.size()).map(|_| rng.next_in(-3, 3)).collect();
    AlgebraVector::new(qs, coeffs).expect("length matches")
}

fn bracket(m: &RealMatrix, cfg: &PowerIterationConfig) -> std::result::Result<(), String> {
    let r = spectral_norm_symmetric(m, cfg).map_err(|e| e.to_string())?;
    let max = m.max_abs();
    let upper = m.size() as f64 * max;
    let lo_ok = max <= r.value * (1.0 + BRACKET_TOLERANCE);
    let hi_ok = r.value <= upper * (1.0 + BRACKET_TOLERANCE);
    if lo_ok && hi_ok {
        Ok(())
    } else {
        Err(format!("norm {} outside [{max}, {upper}]", r.value))
    }
}

fn check_one(n: u64, mt: &MertensTable, cfg: &PowerIterationConfig) -> Tally {
    let mut t = Tally::default();
    let qs = build_quotient(n);
    let s = qs.size();
    let reps = qs.reps();

    // involution: k -> n / k reverses S and squares to the identity
    for (p, &k) in reps.iter().enumerate() {
        let bar = n / k;
        let ok = bar == reps[s - 1 - p] && n / bar == k;
        t.record(0, ok, || format!("n={n}: bar({k}) = {bar}"));
    }

    let formula = cardinality_formula(n);
    t.record(1, formula == s as u64, || {
        format!("n={n}: #S = {s}, formula gives {formula}")
    });

    if s >= 2 {
        let gap = gap_ratio_max(&qs).expect("s >= 2");
        t.record(2, gap.le_surd(4, 2, 2), || {
            format!("n={n}: gap ratio {gap}")
        });
    }

    for i in 1..=n {
        for j in 1..=n / i {
            let ok = (n / i) / j == n / (i * j);
            t.record(3, ok, || format!("n={n}: i={i} j={j}"));
        }
    }

    let mut rng = Lcg::new(n);
    let a = random_vector(&qs, &mut rng);
    let b = random_vector(&qs, &mut rng);
    let ab = convolve(&a, &b).expect("same structure");
    let ok = regular_rep(&ab) == regular_rep(&a).mul(&regular_rep(&b));
    t.record(4, ok, || {
        format!(
            "n={n}: rho(a b) != rho(a) rho(b) for a={:?} b={:?}",
            a.coeffs(),
            b.coeffs()
        )
    });

    let unit = unit_sequence(&qs);
    let mobius = project_sequence(&qs, |k| mt.prefix()[k as usize]);
    let product = convolve(&unit, &mobius).expect("same structure");
    let ok = product == AlgebraVector::one(&qs)
        && regular_rep(&unit).mul(&regular_rep(&mobius)) == IntMatrix::identity(s);
    t.record(5, ok, || format!("n={n}: u mu = {:?}", product.coeffs()));

    for (c, &k) in reps.iter().enumerate() {
        let m = t_rho_basis(&qs, c);
        let at = m.first_asymmetry();
        t.record(6, at.is_none(), || {
            format!("n={n}: T rho({k}) asymmetric at {at:?}")
        });
    }

    match verify_tut(&qs, mt) {
        Ok(cert) => t.record(7, cert.holds, || {
            format!("n={n}: U X != I at {:?}", cert.first_offending)
        }),
        Err(e) => t.record(7, false, || format!("n={n}: {e}")),
    }

    let m = build_m(&qs, mt).expect("table covers n");
    let named = [
        ("T", build_t(&qs).to_real()),
        ("U", build_u(&qs).to_real()),
        ("M", m.to_real()),
        ("Mtilde", build_mtilde(&qs)),
    ];
    for (name, matrix) in &named {
        let res = bracket(matrix, cfg);
        t.record(8, res.is_ok(), || {
            format!("n={n} {name}: {}", res.unwrap_err())
        });
    }
    t
}

/// Runs every check for each `1 <= n <= n_max`.
pub fn verify_suite(n_max: u64) -> Result<VerifyReport> {
    if n_max == 0 {
        return Err(Error::Config("n_max must be at least 1".into()));
    }
    let mt = MertensTable::up_to(n_max)?;
    let cfg = PowerIterationConfig::default();
    let tallies: Vec<Tally> = (1..=n_max)
        .into_par_iter()
        .map(|n| check_one(n, &mt, &cfg))
        .collect();
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t);
    }
    let checks = CHECKS
        .iter()
        .enumerate()
        .map(|(i, &name)| CheckSummary {
            name,
            cases: total.cases[i],
            failures: total.failures[i],
            first_counterexample: total.first[i].take(),
        })
        .collect();
    Ok(VerifyReport { n_max, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges_pass() {
        for n_max in [1, 2, 16, 100] {
            let report = verify_suite(n_max).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.checks.len(), CHECKS.len());
        }
        let r = verify_suite(16).unwrap();
        assert_eq!(r.check("cardinality").unwrap().cases, 16);
        assert_eq!(r.check("gap_bound").unwrap().cases, 15);
        assert!(verify_suite(0).is_err());
    }

    #[test]
    fn report_lists_failures() {
        let report = VerifyReport {
            n_max: 3,
            checks: vec![CheckSummary {
                name: "involution",
                cases: 4,
                failures: 1,
                first_counterexample: Some("n=3: made up".into()),
            }],
        };
        assert!(!report.passed());
        let text = report.to_string();
        assert!(text.contains("FAIL involution"));
        assert!(text.contains("n=3: made up"));
    }
}
