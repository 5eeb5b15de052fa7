//! Classes of the relation `i ~ j  <=>  n / i == n / j` for a fixed `n`.
//!
//! Every bounded class is an integer interval and is named by its largest
//! element. Those largest elements form `S`; integers above `n` make up a
//! single unbounded class, which is represented as `None` wherever a class
//! representative is returned. Classes themselves are never materialized.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The representative set `S` of the bounded classes for one `n`.
///
/// Positions are 0-based: `reps()[p]` is the `(p + 1)`-th smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    n: u64,
    root: u64,
    reps: Vec<u64>,
}

impl QuotientStructure {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `#S`.
    pub fn size(&self) -> usize {
        self.reps.len()
    }

    /// `S` in increasing order.
    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    /// `floor(sqrt(n))`; every integer up to it is a representative.
    pub fn root(&self) -> u64 {
        self.root
    }

    /// Position of `k` in `S`, or `None` if `k` is not a representative.
    pub fn index_of(&self, k: u64) -> Option<usize> {
        if k == 0 || k > self.n {
            return None;
        }
        let pos = if k <= self.root {
            (k - 1) as usize
        } else {
            // k > root in S means n / k <= root sits at the mirrored position
            let mirror = (self.n / k) as usize;
            self.size().checked_sub(mirror)?
        };
        (self.reps.get(pos) == Some(&k)).then_some(pos)
    }

    pub fn contains(&self, k: u64) -> bool {
        self.index_of(k).is_some()
    }

    /// The involution `k -> n / k` on `S`.
    pub fn bar(&self, k: u64) -> Result<u64> {
        if !self.contains(k) {
            return Err(self.domain_error(k));
        }
        Ok(self.n / k)
    }

    /// Largest element of the class of `m`, or `None` for the unbounded class.
    pub fn class_rep(&self, m: u64) -> Option<u64> {
        if m == 0 || m > self.n {
            None
        } else {
            Some(self.n / (self.n / m))
        }
    }

    /// Successor of `k` in `S` (`None` for `k = n`).
    pub fn successor(&self, k: u64) -> Result<Option<u64>> {
        let pos = self.index_of(k).ok_or_else(|| self.domain_error(k))?;
        Ok(self.reps.get(pos + 1).copied())
    }

    /// Predecessor of `k` in `S`, with `0` before the first element.
    pub fn predecessor(&self, k: u64) -> Result<u64> {
        let pos = self.index_of(k).ok_or_else(|| self.domain_error(k))?;
        Ok(if pos == 0 { 0 } else { self.reps[pos - 1] })
    }

    /// Number of integers in the class represented by `k`.
    pub fn class_size(&self, k: u64) -> Result<u64> {
        Ok(k - self.predecessor(k)?)
    }

    pub(crate) fn domain_error(&self, value: u64) -> Error {
        Error::Domain { n: self.n, value }
    }
}

/// Builds `S` for `n >= 1` in `O(sqrt(n))`.
///
/// Small representatives are `1..=floor(sqrt(n))`; the large ones are their
/// images `n / k`, listed in reverse so the whole sequence increases.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn build_quotient(n: u64) -> QuotientStructure {
    assert!(n >= 1, "the floor-quotient relation needs n >= 1");
    let root = n.isqrt();
    let mut reps: Vec<u64> = (1..=root).collect();
    reps.reserve(root as usize);
    for k in (1..=root).rev() {
        let big = n / k;
        if big > root {
            reps.push(big);
        }
    }
    QuotientStructure { n, root, reps }
}

/// Closed form for `#S`: `floor(sqrt(n)) + floor(sqrt(n + 1/4) - 1/2)`.
///
/// The second term is the largest `m` with `m (m + 1) <= n`, evaluated as
/// `(isqrt(4n + 1) - 1) / 2` in exact integers.
pub fn cardinality_formula(n: u64) -> u64 {
    let wide = 4 * u128::from(n) + 1;
    let second = (wide.isqrt() - 1) / 2;
    n.isqrt() + second as u64
}

/// An exact positive ratio `num / den`.
#[derive(Clone, Copy, Debug, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Ratio { num, den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `num / den <= a + b * sqrt(c)` for non-negative integers, decided exactly.
    pub fn le_surd(self, a: u64, b: u64, c: u64) -> bool {
        let num = u128::from(self.num);
        let den = u128::from(self.den);
        let a_den = u128::from(a) * den;
        if num <= a_den {
            return true;
        }
        let excess = num - a_den;
        excess * excess <= u128::from(b) * u128::from(b) * u128::from(c) * den * den
    }

    /// `num / den <= bound` exactly.
    pub fn le_int(self, bound: u64) -> bool {
        u128::from(self.num) <= u128::from(bound) * u128::from(self.den)
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Largest ratio `k+ / k` between consecutive representatives.
pub fn gap_ratio_max(qs: &QuotientStructure) -> Result<Ratio> {
    qs.reps
        .windows(2)
        .map(|w| Ratio::new(w[1], w[0]))
        .max()
        .ok_or(Error::UndefinedRatio)
}
