//! Worked tables for a single `n`: the class monoid, the quotient algebra, its
//! regular representation and the products with `T`.

use std::fmt;

use crate::algebra::{
    multiplication_table, project_sequence, regular_rep, unit_sequence, AlgebraVector,
    MultiplicationTable,
};
use crate::arith::MertensTable;
use crate::dense::IntMatrix;
use crate::error::{Error, Result};
use crate::harness::format::labeled_grid;
use crate::matrices::{build_t, t_rho_basis};
use crate::quotient::{build_quotient, QuotientStructure};

/// Largest `n` accepted by [`dump_tables`].
pub const TABLE_LIMIT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TablesReport {
    pub n: u64,
    pub reps: Vec<u64>,
    /// `(s + 1) x (s + 1)` including the unbounded class last; `None` is that class.
    pub monoid: Vec<Vec<Option<u64>>>,
    /// Basis products in the quotient algebra; `None` is zero.
    pub algebra: MultiplicationTable,
    pub unit: Vec<i64>,
    pub mobius: Vec<i64>,
    /// `rho(k)` for every `k` in `S`, in order.
    pub rho_basis: Vec<IntMatrix>,
    pub rho_unit: IntMatrix,
    pub rho_mobius: IntMatrix,
    pub t: IntMatrix,
    /// `T rho(k)` for every `k` in `S`, in order.
    pub t_rho_basis: Vec<IntMatrix>,
    pub t_rho_unit: IntMatrix,
    pub t_rho_mobius: IntMatrix,
}

fn monoid_table(qs: &QuotientStructure, algebra: &MultiplicationTable) -> Vec<Vec<Option<u64>>> {
    let s = qs.size();
    (0..=s)
        .map(|p| {
            (0..=s)
                .map(|q| {
                    if p < s && q < s {
                        algebra.get(p, q)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

pub fn dump_tables(n: u64) -> Result<TablesReport> {
    if n == 0 {
        return Err(Error::Config("n must be at least 1".into()));
    }
    if n > TABLE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: TABLE_LIMIT,
        });
    }
    let qs = build_quotient(n);
    let mt = MertensTable::up_to(n)?;
    let algebra = multiplication_table(&qs);
    let unit = unit_sequence(&qs);
    let mobius = project_sequence(&qs, |k| mt.prefix()[k as usize]);
    let t = build_t(&qs);
    let rho_unit = regular_rep(&unit);
    let rho_mobius = regular_rep(&mobius);
    Ok(TablesReport {
        n,
        reps: qs.reps().to_vec(),
        monoid: monoid_table(&qs, &algebra),
        unit: unit.coeffs().to_vec(),
        mobius: mobius.coeffs().to_vec(),
        rho_basis: (0..qs.size())
            .map(|c| regular_rep(&AlgebraVector::basis_at(&qs, c)))
            .collect(),
        t_rho_basis: (0..qs.size()).map(|c| t_rho_basis(&qs, c)).collect(),
        t_rho_unit: t.mul(&rho_unit),
        t_rho_mobius: t.mul(&rho_mobius),
        algebra,
        rho_unit,
        rho_mobius,
        t,
    })
}

fn labels(reps: &[u64]) -> Vec<String> {
    reps.iter().map(u64::to_string).collect()
}

fn matrix_grid(corner: &str, reps: &[u64], m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|row| row.iter().map(i64::to_string).collect())
        .collect();
    labeled_grid(corner, &labels(reps), &cells)
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for TablesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reps = &self.reps;
        let set: Vec<String> = labels(reps);
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "S = {{{}}}", set.join(", "))?;
        writeln!(f, "#S = {}", reps.len())?;
        writeln!(f)?;

        writeln!(f, "class monoid (inf = unbounded class)")?;
        let mut monoid_labels = set.clone();
        monoid_labels.push("inf".into());
        let cells: Vec<Vec<String>> = self
            .monoid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.map_or_else(|| "inf".to_string(), |k| k.to_string()))
                    .collect()
            })
            .collect();
        write!(f, "{}", labeled_grid("*", &monoid_labels, &cells))?;
        writeln!(f)?;

        writeln!(f, "quotient algebra basis (0 = zero)")?;
        let cells: Vec<Vec<String>> = (0..self.algebra.size())
            .map(|p| {
                self.algebra
                    .row(p)
                    .iter()
                    .map(|c| c.map_or_else(|| "0".to_string(), |k| k.to_string()))
                    .collect()
            })
            .collect();
        write!(f, "{}", labeled_grid("*", &set, &cells))?;
        writeln!(f)?;

        writeln!(f, "u = {}", vector(&self.unit))?;
        writeln!(f, "mu = {}", vector(&self.mobius))?;
        writeln!(f)?;

        for (k, m) in reps.iter().zip(&self.rho_basis) {
            writeln!(f, "rho({k})")?;
            write!(f, "{}", matrix_grid("", reps, m))?;
            writeln!(f)?;
        }
        writeln!(f, "rho(u)")?;
        write!(f, "{}", matrix_grid("", reps, &self.rho_unit))?;
        writeln!(f)?;
        writeln!(f, "rho(mu)")?;
        write!(f, "{}", matrix_grid("", reps, &self.rho_mobius))?;
        writeln!(f)?;

        writeln!(f, "T")?;
        write!(f, "{}", matrix_grid("", reps, &self.t))?;
        writeln!(f)?;
        for (k, m) in reps.iter().zip(&self.t_rho_basis) {
            writeln!(f, "T rho({k})")?;
            write!(f, "{}", matrix_grid("", reps, m))?;
            writeln!(f)?;
        }
        writeln!(f, "T rho(u) = U")?;
        write!(f, "{}", matrix_grid("", reps, &self.t_rho_unit))?;
        writeln!(f)?;
        writeln!(f, "T rho(mu) = M")?;
        write!(f, "{}", matrix_grid("", reps, &self.t_rho_mobius))
    }
}
