//! The monoid of floor-quotient classes and its integer algebra.
//!
//! Multiplication of integers is compatible with the class relation, so the
//! classes form a commutative monoid. Quotienting its integer algebra by the
//! unbounded class gives an algebra of dimension `#S` whose canonical basis is
//! indexed by `S`; a product that lands in the unbounded class is zero there.

pub use crate::dense::IntMatrix;
use crate::error::{Error, Result};
use crate::quotient::QuotientStructure;

/// Product of the classes of `i` and `j`.
///
/// Returns the representative of `i * j`, or `None` when the product falls in
/// the unbounded class (the zero of the quotient algebra).
pub fn product(qs: &QuotientStructure, i: u64, j: u64) -> Result<Option<u64>> {
    if !qs.contains(i) {
        return Err(qs.domain_error(i));
    }
    if !qs.contains(j) {
        return Err(qs.domain_error(j));
    }
    let n = qs.n();
    // i * j <= n  <=>  i <= n / j, without forming i * j
    if i > n / j {
        return Ok(None);
    }
    Ok(qs.class_rep(i * j))
}

/// Position of the product of the basis elements at positions `p` and `q`.
///
/// `reps[p] * reps[q] <= n` exactly when `p + q <= s - 1`.
pub fn product_index(qs: &QuotientStructure, p: usize, q: usize) -> Option<usize> {
    let s = qs.size();
    if p + q >= s {
        return None;
    }
    let reps = qs.reps();
    let n = qs.n();
    // class_rep(i j) = n / (n / (i j)) and n / (i j) = (n / i) / j
    let quotient = (n / reps[p]) / reps[q];
    // quotient is in S, and the representative n / quotient mirrors it
    let mirror = qs.index_of(quotient)?;
    Some(s - 1 - mirror)
}

/// Multiplication table of the basis, `None` standing for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    size: usize,
    entries: Vec<Option<u64>>,
}

impl MultiplicationTable {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, p: usize, q: usize) -> Option<u64> {
        self.entries[p * self.size + q]
    }

    pub fn row(&self, p: usize) -> &[Option<u64>] {
        &self.entries[p * self.size..(p + 1) * self.size]
    }
}

pub fn multiplication_table(qs: &QuotientStructure) -> MultiplicationTable {
    let s = qs.size();
    let reps = qs.reps();
    let mut entries = Vec::with_capacity(s * s);
    for p in 0..s {
        for q in 0..s {
            entries.push(product_index(qs, p, q).map(|r| reps[r]));
        }
    }
    MultiplicationTable { size: s, entries }
}

/// An element of the quotient algebra: integer coefficients over the basis `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraVector<'a> {
    qs: &'a QuotientStructure,
    coeffs: Vec<i64>,
}

impl<'a> AlgebraVector<'a> {
    pub fn new(qs: &'a QuotientStructure, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != qs.size() {
            return Err(Error::Shape {
                expected: qs.size(),
                found: coeffs.len(),
            });
        }
        Ok(AlgebraVector { qs, coeffs })
    }

    pub fn zero(qs: &'a QuotientStructure) -> Self {
        AlgebraVector {
            qs,
            coeffs: vec![0; qs.size()],
        }
    }

    /// The basis element named by representative `k`.
    pub fn basis(qs: &'a QuotientStructure, k: u64) -> Result<Self> {
        let pos = qs.index_of(k).ok_or_else(|| qs.domain_error(k))?;
        Ok(Self::basis_at(qs, pos))
    }

    pub fn basis_at(qs: &'a QuotientStructure, pos: usize) -> Self {
        let mut v = Self::zero(qs);
        v.coeffs[pos] = 1;
        v
    }

    /// The unit, i.e. the basis element of the class of 1.
    pub fn one(qs: &'a QuotientStructure) -> Self {
        Self::basis_at(qs, 0)
    }

    pub fn structure(&self) -> &'a QuotientStructure {
        self.qs
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of the basis element `k`.
    pub fn coeff(&self, k: u64) -> Result<i64> {
        let pos = self.qs.index_of(k).ok_or_else(|| self.qs.domain_error(k))?;
        Ok(self.coeffs[pos])
    }

    fn check_same(&self, other: &AlgebraVector<'_>) -> Result<()> {
        if self.qs.n() != other.qs.n() {
            return Err(Error::StructureMismatch {
                left: self.qs.n(),
                right: other.qs.n(),
            });
        }
        Ok(())
    }
}

/// Image of an arithmetic sequence given through its prefix sums `F`.
///
/// Coefficient of `k` is the sum of the sequence over the class of `k`, that
/// is `F(k) - F(k-)` with `k-` the predecessor in `S` and `F(0)` for `k = 1`.
pub fn project_sequence<'a>(
    qs: &'a QuotientStructure,
    mut prefix: impl FnMut(u64) -> i64,
) -> AlgebraVector<'a> {
    let mut previous = prefix(0);
    let coeffs = qs
        .reps()
        .iter()
        .map(|&k| {
            let current = prefix(k);
            let c = current - previous;
            previous = current;
            c
        })
        .collect();
    AlgebraVector { qs, coeffs }
}

/// Image of the all-ones sequence: class sizes.
pub fn unit_sequence(qs: &QuotientStructure) -> AlgebraVector<'_> {
    project_sequence(qs, |k| k as i64)
}

/// Product in the quotient algebra.
pub fn convolve<'a>(a: &AlgebraVector<'a>, b: &AlgebraVector<'_>) -> Result<AlgebraVector<'a>> {
    a.check_same(b)?;
    let qs = a.qs;
    let s = qs.size();
    let mut out = vec![0i64; s];
    for (p, &ap) in a.coeffs.iter().enumerate() {
        if ap == 0 {
            continue;
        }
        // positions with p + q >= s multiply into the zero class
        for (q, &bq) in b.coeffs.iter().enumerate().take(s - p) {
            if bq == 0 {
                continue;
            }
            if let Some(r) = product_index(qs, p, q) {
                out[r] += ap * bq;
            }
        }
    }
    Ok(AlgebraVector { qs, coeffs: out })
}

/// Matrix of `x -> a x` in the basis `S`.
///
/// Column `q` holds the coefficients of `a` times the basis element at `q`;
/// in particular column 0 is `a` itself.
pub fn regular_rep(a: &AlgebraVector<'_>) -> IntMatrix {
    let qs = a.qs;
    let s = qs.size();
    let mut m = IntMatrix::zeros(s);
    for q in 0..s {
        for (p, &ap) in a.coeffs.iter().enumerate().take(s - q) {
            if ap == 0 {
                continue;
            }
            if let Some(r) = product_index(qs, p, q) {
                m[(r, q)] += ap;
            }
        }
    }
    m
}
