//! `T`, `U`, `M` and their floor-free real counterparts.
//!
//! All matrices are indexed by 0-based positions in `S`. With `s = #S`:
//!
//! * `T[p][q] = 1` iff `p + q <= s - 1` (on or above the anti-diagonal);
//! * `U[p][q] = n / (reps[p] reps[q])`, and `M[p][q] = Mertens(U[p][q])`;
//! * `D = diag(sqrt(n) / reps[p])`, `Ut = D T D` and `Mt = T Ut^-1 T`.

use num_bigint::BigInt;

use crate::algebra::{product_index, regular_rep, AlgebraVector};
use crate::arith::MertensTable;
pub use crate::dense::{IntMatrix, RealMatrix};
use crate::error::{Error, Result};
use crate::quotient::QuotientStructure;

pub fn build_t(qs: &QuotientStructure) -> IntMatrix {
    let s = qs.size();
    IntMatrix::from_fn(s, |p, q| i64::from(p + q < s))
}

/// Exact inverse of `T` for size `s`: `+1` on the anti-diagonal and `-1` on
/// the diagonal just below it.
pub fn inverse_t(s: usize) -> IntMatrix {
    IntMatrix::from_fn(s, |p, q| {
        if p + q + 1 == s {
            1
        } else if p >= 1 && p + q == s {
            -1
        } else {
            0
        }
    })
}

pub fn build_u(qs: &QuotientStructure) -> IntMatrix {
    let reps = qs.reps();
    let n = qs.n();
    // (n / i) / j == n / (i j), and is 0 exactly when i j > n
    IntMatrix::from_fn(qs.size(), |p, q| ((n / reps[p]) / reps[q]) as i64)
}

fn check_table(qs: &QuotientStructure, mt: &MertensTable) -> Result<()> {
    if mt.bound() < qs.n() {
        return Err(Error::Range {
            arg: qs.n(),
            bound: mt.bound(),
        });
    }
    Ok(())
}

/// `M[p][q] = Mertens(n / (reps[p] reps[q]))`, with `Mertens(0) = 0`.
pub fn build_m(qs: &QuotientStructure, mt: &MertensTable) -> Result<IntMatrix> {
    check_table(qs, mt)?;
    let prefix = mt.prefix();
    let reps = qs.reps();
    let n = qs.n();
    Ok(IntMatrix::from_fn(qs.size(), |p, q| {
        prefix[((n / reps[p]) / reps[q]) as usize]
    }))
}

/// Adds `weight * T rho(basis at c)` into `acc` using the sparse form of `rho`.
///
/// Column `q` of `rho(k)` has its single 1 at the position `r` of `k reps[q]`,
/// so column `q` of `T rho(k)` is column `r` of `T`: ones in rows `0..s - r`.
fn add_t_rho_basis(qs: &QuotientStructure, c: usize, weight: i64, acc: &mut IntMatrix) {
    let s = qs.size();
    for q in 0..s - c {
        if let Some(r) = product_index(qs, c, q) {
            for p in 0..s - r {
                acc[(p, q)] += weight;
            }
        }
    }
}

/// `T rho(k)` for the basis element at position `c`.
pub fn t_rho_basis(qs: &QuotientStructure, c: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(qs.size());
    add_t_rho_basis(qs, c, 1, &mut m);
    m
}

/// `T rho(a)` by dense multiplication.
pub fn t_rho(a: &AlgebraVector<'_>) -> IntMatrix {
    build_t(a.structure()).mul(&regular_rep(a))
}

/// `M` assembled as `sum_k (Mertens(k) - Mertens(k-)) T rho(k)`.
pub fn build_m_via_weighted_sum(qs: &QuotientStructure, mt: &MertensTable) -> Result<IntMatrix> {
    check_table(qs, mt)?;
    let prefix = mt.prefix();
    let mut acc = IntMatrix::zeros(qs.size());
    let mut previous = 0;
    for (c, &k) in qs.reps().iter().enumerate() {
        let weight = prefix[k as usize] - prefix[previous as usize];
        previous = k;
        if weight != 0 {
            add_t_rho_basis(qs, c, weight, &mut acc);
        }
    }
    Ok(acc)
}

/// `U` assembled as `sum_k (k - k-) T rho(k)`.
pub fn build_u_via_weighted_sum(qs: &QuotientStructure) -> IntMatrix {
    let mut acc = IntMatrix::zeros(qs.size());
    let mut previous = 0;
    for (c, &k) in qs.reps().iter().enumerate() {
        add_t_rho_basis(qs, c, (k - previous) as i64, &mut acc);
        previous = k;
    }
    acc
}

/// An entry where `U X` differs from the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Offending {
    pub row: usize,
    pub col: usize,
    pub expected: i64,
    pub found: BigInt,
}

/// Outcome of the exact check `U (T^-1 M T^-1) = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutCertificate {
    pub n: u64,
    pub holds: bool,
    pub first_offending: Option<Offending>,
    /// Entries that had to be recomputed with arbitrary-size integers.
    pub wide_entries: usize,
}

/// `T^-1 A T^-1`, using the two non-zeros per row and column of `T^-1`.
pub fn sandwich_inverse_t(a: &IntMatrix) -> IntMatrix {
    let s = a.size();
    // row p of T^-1: +1 at s-1-p, -1 at s-p when p >= 1
    let left = IntMatrix::from_fn(s, |p, q| {
        let mut v = a[(s - 1 - p, q)];
        if p >= 1 {
            v -= a[(s - p, q)];
        }
        v
    });
    // column q of T^-1: +1 at row s-1-q, -1 at row s-q when q >= 1
    IntMatrix::from_fn(s, |p, q| {
        let mut v = left[(p, s - 1 - q)];
        if q >= 1 {
            v -= left[(p, s - q)];
        }
        v
    })
}

/// Checks `M = T U^-1 T` exactly, as `U (T^-1 M T^-1) = I`.
pub fn verify_tut(qs: &QuotientStructure, mt: &MertensTable) -> Result<TutCertificate> {
    let m = build_m(qs, mt)?;
    let u = build_u(qs);
    Ok(certify_inverse_pair(qs.n(), &u, &sandwich_inverse_t(&m)))
}

/// Checks `u x = I` exactly; entries overflowing 64 bits are redone in `BigInt`.
pub fn certify_inverse_pair(n: u64, u: &IntMatrix, x: &IntMatrix) -> TutCertificate {
    let s = u.size();
    let mut wide_entries = 0;
    let mut first_offending = None;
    'outer: for p in 0..s {
        for q in 0..s {
            let narrow = (0..s).try_fold(0i64, |acc, r| {
                u[(p, r)].checked_mul(x[(r, q)])?.checked_add(acc)
            });
            let expected = i64::from(p == q);
            let ok = match narrow {
                Some(v) => v == expected,
                None => {
                    wide_entries += 1;
                    let wide: BigInt = (0..s)
                        .map(|r| BigInt::from(u[(p, r)]) * BigInt::from(x[(r, q)]))
                        .sum();
                    if wide != BigInt::from(expected) {
                        first_offending = Some(Offending {
                            row: p,
                            col: q,
                            expected,
                            found: wide,
                        });
                        break 'outer;
                    }
                    true
                }
            };
            if !ok {
                first_offending = Some(Offending {
                    row: p,
                    col: q,
                    expected,
                    found: BigInt::from(narrow.unwrap_or_default()),
                });
                break 'outer;
            }
        }
    }
    TutCertificate {
        n,
        holds: first_offending.is_none(),
        first_offending,
        wide_entries,
    }
}

/// Diagonal of `D`: `sqrt(n) / reps[p]`.
pub fn build_d(qs: &QuotientStructure) -> Vec<f64> {
    let root = (qs.n() as f64).sqrt();
    qs.reps().iter().map(|&k| root / k as f64).collect()
}

/// `Ut = D T D`: `n / (reps[p] reps[q])` on and above the anti-diagonal, else 0.
pub fn build_utilde(qs: &QuotientStructure) -> RealMatrix {
    let s = qs.size();
    let reps = qs.reps();
    let n = qs.n() as f64;
    RealMatrix::from_fn(s, |p, q| {
        if p + q < s {
            n / (reps[p] as f64 * reps[q] as f64)
        } else {
            0.0
        }
    })
}

/// The two non-zero diagonals of `Ut^-1 = D^-1 T^-1 D^-1`.
///
/// With `k = reps[s-1-p]`, so that `reps[p] = n / k`:
/// `anti[p]` sits at `(p, s-1-p)` and equals `k (n / k) / n`, and `below[p]`,
/// for `p >= 1`, sits at `(p, s-p)` and equals `-(n / k) k+ / n`.
/// `below[0]` is unused and zero.
#[derive(Clone, Debug, PartialEq)]
pub struct UtildeInverse {
    pub anti: Vec<f64>,
    pub below: Vec<f64>,
}

pub fn utilde_inverse(qs: &QuotientStructure) -> UtildeInverse {
    let s = qs.size();
    let reps = qs.reps();
    let n = qs.n() as f64;
    let anti = (0..s)
        .map(|p| reps[p] as f64 * reps[s - 1 - p] as f64 / n)
        .collect();
    let below = (0..s)
        .map(|p| {
            if p == 0 {
                0.0
            } else {
                -(reps[p] as f64 * reps[s - p] as f64) / n
            }
        })
        .collect();
    UtildeInverse { anti, below }
}

/// Constant in `max |Mt| <= C log n`.
///
/// Calibrated once: the largest `max |Mt_n| / ln n` over
/// [`calibration_values`] is 1.0158564098567509 (at n = 1200); this is 1.25
/// times that, rounded to 12 significant digits. Small `n` outside the set can
/// exceed it (n = 2 gives 1/ln 2).
pub const MTILDE_LOG_CONSTANT: f64 = 1.26982051232;

/// `{100, 200, ..., 10^4} ∪ {5000, 10000, ..., 10^5}`, ascending.
pub fn calibration_values() -> Vec<u64> {
    let mut ns: Vec<u64> = (1..=100)
        .map(|k| 100 * k)
        .chain((1..=20).map(|k| 5000 * k))
        .collect();
    ns.sort_unstable();
    ns.dedup();
    ns
}

/// `Mt = T Ut^-1 T` in `O(s^2)`.
///
/// Entry `(i, j)` sums the window `rows <= s-1-i, cols <= s-1-j` of the
/// bi-anti-diagonal middle factor; the windows are read off a 2D cumulative
/// table built row by row.
pub fn build_mtilde(qs: &QuotientStructure) -> RealMatrix {
    let s = qs.size();
    let inv = utilde_inverse(qs);
    // cum[a][b] = sum of middle-factor entries in rows 0..=a, columns 0..=b
    let mut cum = RealMatrix::zeros(s);
    let mut row_acc = vec![0.0f64; s];
    for a in 0..s {
        // row a has anti[a] at column s-1-a and below[a] at column s-a
        let mut running = 0.0;
        for (b, slot) in row_acc.iter_mut().enumerate() {
            if b + 1 + a == s {
                running += inv.anti[a];
            } else if a >= 1 && a + b == s {
                running += inv.below[a];
            }
            *slot += running;
            cum[(a, b)] = *slot;
        }
    }
    let mut out = RealMatrix::from_fn(s, |i, j| cum[(s - 1 - i, s - 1 - j)]);
    out.symmetrize();
    out
}

/// Matrices the CLI and sweeps can name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    T,
    U,
    M,
    Utilde,
    Mtilde,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 5] = [
        MatrixKind::T,
        MatrixKind::U,
        MatrixKind::M,
        MatrixKind::Utilde,
        MatrixKind::Mtilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::T => "T",
            MatrixKind::U => "U",
            MatrixKind::M => "M",
            MatrixKind::Utilde => "Utilde",
            MatrixKind::Mtilde => "Mtilde",
        }
    }

    pub fn is_integer(self) -> bool {
        matches!(self, MatrixKind::T | MatrixKind::U | MatrixKind::M)
    }
}

/// Either flavour of built matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltMatrix {
    Int(IntMatrix),
    Real(RealMatrix),
}

impl BuiltMatrix {
    pub fn to_real(&self) -> RealMatrix {
        match self {
            BuiltMatrix::Int(m) => m.to_real(),
            BuiltMatrix::Real(m) => m.clone(),
        }
    }
}

/// Builds the named matrix; `mt` is only consulted for `M`.
pub fn build(
    kind: MatrixKind,
    qs: &QuotientStructure,
    mt: Option<&MertensTable>,
) -> Result<BuiltMatrix> {
    Ok(match kind {
        MatrixKind::T => BuiltMatrix::Int(build_t(qs)),
        MatrixKind::U => BuiltMatrix::Int(build_u(qs)),
        MatrixKind::M => {
            let owned;
            let table = match mt {
                Some(t) => t,
                None => {
                    owned = MertensTable::up_to(qs.n())?;
                    &owned
                }
            };
            BuiltMatrix::Int(build_m(qs, table)?)
        }
        MatrixKind::Utilde => BuiltMatrix::Real(build_utilde(qs)),
        MatrixKind::Mtilde => BuiltMatrix::Real(build_mtilde(qs)),
    })
}
