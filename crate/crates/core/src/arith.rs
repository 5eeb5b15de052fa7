//! Möbius function and Mertens prefix sums over `1..=N`.

use crate::error::{Error, Result};

/// Default upper bound on sieve size, in values.
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_SIEVE_CAP`].
pub const SIEVE_CAP_ENV: &str = "MERTENS_SIEVE_CAP";

/// Parses a sieve cap as given in [`SIEVE_CAP_ENV`].
///
/// Accepts a positive decimal integer, optionally surrounded by whitespace and
/// with `_` digit separators.
pub fn parse_sieve_cap(raw: &str) -> Result<u64> {
    let cleaned: String = raw.trim().chars().filter(|&c| c != '_').collect();
    match cleaned.parse::<u64>() {
        Ok(cap) if cap > 0 && !cleaned.starts_with('+') => Ok(cap),
        _ => Err(Error::SieveCap(raw.to_string())),
    }
}

/// The sieve cap in effect: the environment override if set, else the default.
pub fn sieve_cap() -> Result<u64> {
    match std::env::var(SIEVE_CAP_ENV) {
        Ok(raw) => parse_sieve_cap(&raw),
        Err(_) => Ok(DEFAULT_SIEVE_CAP),
    }
}

/// Sieved values of μ(1..=N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    // values[0] is a placeholder so that values[k] = μ(k)
    values: Vec<i8>,
}

impl MobiusTable {
    pub fn bound(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// μ(k) for `1 <= k <= bound`.
    pub fn get(&self, k: u64) -> Result<i8> {
        if k == 0 || k > self.bound() {
            return Err(Error::Range {
                arg: k,
                bound: self.bound(),
            });
        }
        Ok(self.values[k as usize])
    }

    /// μ(1), μ(2), … μ(N).
    pub fn values(&self) -> &[i8] {
        &self.values[1..]
    }
}

/// Mertens prefix sums `M(0..=N)` with `M(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MertensTable {
    prefix: Vec<i64>,
}

impl MertensTable {
    pub fn bound(&self) -> u64 {
        (self.prefix.len() - 1) as u64
    }

    /// `M(0), M(1), … M(N)`.
    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// Builds the table directly from a bound, sieving under the active cap.
    pub fn up_to(bound: u64) -> Result<Self> {
        Ok(mertens_prefix(&mobius_sieve(bound)?))
    }
}

/// μ(1..=N) under the cap from [`sieve_cap`].
pub fn mobius_sieve(bound: u64) -> Result<MobiusTable> {
    mobius_sieve_with_cap(bound, sieve_cap()?)
}

/// Linear sieve for μ(1..=N).
///
/// Each composite is visited once, through its least prime factor.
pub fn mobius_sieve_with_cap(bound: u64, cap: u64) -> Result<MobiusTable> {
    if bound == 0 || bound > cap || usize::try_from(bound).is_err() {
        return Err(Error::Bound { bound, cap });
    }
    let n = bound as usize;
    // 2 marks "not reached yet"; anything still 2 when visited is prime
    const UNSEEN: i8 = 2;
    let mut mu = vec![UNSEEN; n + 1];
    mu[0] = 0;
    mu[1] = 1;
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=n {
        if mu[i] == UNSEEN {
            mu[i] = -1;
            primes.push(i);
        }
        for &p in &primes {
            let Some(ip) = i.checked_mul(p).filter(|&ip| ip <= n) else {
                break;
            };
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    Ok(MobiusTable { values: mu })
}

/// Running sums of μ with `prefix[0] = 0`.
pub fn mertens_prefix(mobius: &MobiusTable) -> MertensTable {
    let mut prefix = Vec::with_capacity(mobius.values.len());
    prefix.push(0i64);
    let mut acc = 0i64;
    for &m in mobius.values() {
        acc += i64::from(m);
        prefix.push(acc);
    }
    MertensTable { prefix }
}

/// `M(k)`, with `M(0) = 0`.
pub fn mertens_at(table: &MertensTable, k: u64) -> Result<i64> {
    if k > table.bound() {
        return Err(Error::Range {
            arg: k,
            bound: table.bound(),
        });
    }
    Ok(table.prefix[k as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius_by_trial_division(mut k: u64) -> i8 {
        let mut sign = 1i8;
        let mut p = 2;
        while p * p <= k {
            if k % p == 0 {
                k /= p;
                if k % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if k > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn small_values() {
        let mob = mobius_sieve_with_cap(4, 10).unwrap();
        assert_eq!(mob.values(), &[1, -1, -1, 0]);
        let mob = mobius_sieve_with_cap(30, 100).unwrap();
        assert_eq!(mob.get(30).unwrap(), -1);
        assert_eq!(mob.get(12).unwrap(), 0);
        assert_eq!(mob.get(1).unwrap(), 1);
    }

    #[test]
    fn bound_errors() {
        assert!(matches!(
            mobius_sieve_with_cap(0, 10),
            Err(Error::Bound { bound: 0, .. })
        ));
        assert!(matches!(
            mobius_sieve_with_cap(11, 10),
            Err(Error::Bound { bound: 11, cap: 10 })
        ));
        let mob = mobius_sieve_with_cap(10, 10).unwrap();
        assert!(mob.get(0).is_err());
        assert!(mob.get(11).is_err());
    }

    #[test]
    fn mertens_values() {
        let mt = mertens_prefix(&mobius_sieve_with_cap(100, 1000).unwrap());
        assert_eq!(mertens_at(&mt, 0).unwrap(), 0);
        assert_eq!(mertens_at(&mt, 1).unwrap(), 1);
        assert_eq!(mertens_at(&mt, 2).unwrap(), 0);
        assert_eq!(mertens_at(&mt, 5).unwrap(), -2);
        assert_eq!(mertens_at(&mt, 16).unwrap(), -1);
        assert!(matches!(
            mertens_at(&mt, 101),
            Err(Error::Range {
                arg: 101,
                bound: 100
            })
        ));
    }

    #[test]
    fn mertens_100_by_brute_force() {
        let brute: i64 = (1..=100)
            .map(|k| i64::from(mobius_by_trial_division(k)))
            .sum();
        assert_eq!(brute, 1);
        let mt = mertens_prefix(&mobius_sieve_with_cap(100, 1000).unwrap());
        assert_eq!(mertens_at(&mt, 100).unwrap(), brute);
    }

    #[test]
    fn agrees_with_trial_division() {
        let bound = 10_000;
        let mob = mobius_sieve_with_cap(bound, bound).unwrap();
        let mt = mertens_prefix(&mob);
        let mut acc = 0i64;
        for k in 1..=bound {
            let mu = mobius_by_trial_division(k);
            assert_eq!(mob.get(k).unwrap(), mu, "mu({k})");
            acc += i64::from(mu);
            assert_eq!(mertens_at(&mt, k).unwrap(), acc, "M({k})");
        }
    }

    #[test]
    fn divisor_sum_identity() {
        let bound = 10_000usize;
        let mob = mobius_sieve_with_cap(bound as u64, bound as u64).unwrap();
        let mut sums = vec![0i64; bound + 1];
        for d in 1..=bound {
            let mu = i64::from(mob.values()[d - 1]);
            for k in (d..=bound).step_by(d) {
                sums[k] += mu;
            }
        }
        assert_eq!(sums[1], 1);
        assert!(sums[2..].iter().all(|&s| s == 0));
    }

    #[test]
    fn prefix_steps_are_unit() {
        let mt = MertensTable::up_to(5000).unwrap();
        assert_eq!(mt.prefix()[0], 0);
        assert!(mt.prefix().windows(2).all(|w| (w[1] - w[0]).abs() <= 1));
    }

    #[test]
    fn sieve_cap_parsing() {
        assert_eq!(parse_sieve_cap("100").unwrap(), 100);
        assert_eq!(parse_sieve_cap(" 1_000_000 \n").unwrap(), 1_000_000);
        assert!(parse_sieve_cap("0").is_err());
        assert!(parse_sieve_cap("-5").is_err());
        assert!(parse_sieve_cap("+5").is_err());
        assert!(parse_sieve_cap("1e8").is_err());
        assert!(parse_sieve_cap("").is_err());
    }
}
