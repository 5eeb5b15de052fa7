//! Spectral 2-norm of symmetric matrices.
//!
//! For a symmetric matrix the 2-norm is the largest eigenvalue magnitude.
//! [`spectral_norm_symmetric`] runs power iteration on `A^2`, which has the
//! non-negative eigenvalues `lambda^2`, so a dominant pair `+-lambda` cannot
//! stall it. [`spectral_norm_oracle`] is an independent cyclic Jacobi solve for
//! small matrices.

use std::borrow::Cow;

use crate::dense::{IntMatrix, RealMatrix};
use crate::error::{Error, Result};

/// Relative tolerance for the symmetry check on real input.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Largest matrix the Jacobi oracle accepts.
pub const ORACLE_MAX_SIZE: usize = 300;

/// Off-diagonal Frobenius norm, relative to the full norm, at which the
/// Jacobi sweeps stop.
pub const ORACLE_OFF_DIAGONAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerIterationConfig {
    /// Relative change of the Rayleigh quotient of `A^2` at which to stop.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for PowerIterationConfig {
    fn default() -> Self {
        PowerIterationConfig {
            tol: 1e-10,
            max_iter: 20_000,
            seed: 42,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub iterations: usize,
    /// Relative change of the last Rayleigh quotient update.
    pub residual: f64,
    pub converged: bool,
}

/// Anything that can be viewed as a dense real matrix.
pub trait AsRealMatrix {
    fn as_real(&self) -> Cow<'_, RealMatrix>;
}

impl AsRealMatrix for RealMatrix {
    fn as_real(&self) -> Cow<'_, RealMatrix> {
        Cow::Borrowed(self)
    }
}

impl AsRealMatrix for IntMatrix {
    fn as_real(&self) -> Cow<'_, RealMatrix> {
        Cow::Owned(self.to_real())
    }
}

/// 64-bit linear congruential generator (Knuth's MMIX constants).
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform integer in `lo..=hi`.
    pub fn next_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo) as u64 + 1;
        lo + ((self.next_u64() >> 32) % span) as i64
    }
}

/// Start vector: components uniform in `[-1, 1)`, normalized.
fn start_vector(size: usize, seed: u64) -> Vec<f64> {
    let mut rng = Lcg::new(seed);
    let mut v: Vec<f64> = (0..size).map(|_| 2.0 * rng.next_f64() - 1.0).collect();
    let norm = dot(&v, &v).sqrt();
    if norm == 0.0 {
        v.fill(1.0 / (size as f64).sqrt());
    } else {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_symmetric(a: &RealMatrix) -> Result<()> {
    match a.first_asymmetry(SYMMETRY_TOLERANCE) {
        Some((row, col)) => Err(Error::NotSymmetric { row, col }),
        None => Ok(()),
    }
}

/// Spectral norm by power iteration on `A^2`.
///
/// Each step forms `w = A v` and `x = A w`; the Rayleigh quotient of `A^2` at
/// the unit vector `v` is `w . w`, and the returned value is its square root.
/// Iteration stops once the quotient's relative change is at most `cfg.tol`.
/// A result with `converged == false` is returned, not an error, when
/// `cfg.max_iter` steps are not enough.
pub fn spectral_norm_symmetric<A: AsRealMatrix + ?Sized>(
    a: &A,
    cfg: &PowerIterationConfig,
) -> Result<NormResult> {
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(Error::Tolerance);
    }
    let a = a.as_real();
    check_symmetric(&a)?;
    let s = a.size();
    match s {
        0 => {
            return Ok(NormResult {
                value: 0.0,
                iterations: 0,
                residual: 0.0,
                converged: true,
            })
        }
        1 => {
            return Ok(NormResult {
                value: a[(0, 0)].abs(),
                iterations: 0,
                residual: 0.0,
                converged: true,
            })
        }
        _ => {}
    }

    let mut v = start_vector(s, cfg.seed);
    let mut w = vec![0.0; s];
    let mut x = vec![0.0; s];
    let mut quotient = f64::NAN;
    let mut residual = f64::INFINITY;
    for iter in 1..=cfg.max_iter {
        a.matvec_into(&v, &mut w);
        let next = dot(&w, &w);
        if next == 0.0 {
            // v is in the kernel; for a random start this means A = 0
            return Ok(NormResult {
                value: if a.max_abs() == 0.0 { 0.0 } else { f64::NAN },
                iterations: iter,
                residual: 0.0,
                converged: a.max_abs() == 0.0,
            });
        }
        if quotient.is_finite() {
            residual = (next - quotient).abs() / next;
        }
        quotient = next;
        if residual <= cfg.tol {
            return Ok(NormResult {
                value: quotient.sqrt(),
                iterations: iter,
                residual,
                converged: true,
            });
        }
        a.matvec_into(&w, &mut x);
        let norm = dot(&x, &x).sqrt();
        v.iter_mut().zip(&x).for_each(|(vi, xi)| *vi = xi / norm);
    }
    Ok(NormResult {
        value: quotient.sqrt(),
        iterations: cfg.max_iter,
        residual,
        converged: false,
    })
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(a: &RealMatrix) -> Result<Vec<f64>> {
    let s = a.size();
    if s > ORACLE_MAX_SIZE {
        return Err(Error::OracleSize {
            size: s,
            cap: ORACLE_MAX_SIZE,
        });
    }
    check_symmetric(a)?;
    let mut m = a.clone();
    let total: f64 = m.as_slice().iter().map(|v| v * v).sum::<f64>().sqrt();
    if total == 0.0 {
        return Ok(vec![0.0; s]);
    }
    let off_norm = |m: &RealMatrix| -> f64 {
        let mut acc = 0.0;
        for p in 0..s {
            for q in p + 1..s {
                acc += 2.0 * m[(p, q)] * m[(p, q)];
            }
        }
        acc.sqrt()
    };
    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&m) <= ORACLE_OFF_DIAGONAL_TOL * total {
            break;
        }
        for p in 0..s {
            for q in p + 1..s {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (m[(p, p)], m[(q, q)]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for r in 0..s {
                    let (arp, arq) = (m[(r, p)], m[(r, q)]);
                    m[(r, p)] = c * arp - sn * arq;
                    m[(r, q)] = sn * arp + c * arq;
                }
                for r in 0..s {
                    let (apr, aqr) = (m[(p, r)], m[(q, r)]);
                    m[(p, r)] = c * apr - sn * aqr;
                    m[(q, r)] = sn * apr + c * aqr;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
            }
        }
    }
    Ok((0..s).map(|p| m[(p, p)]).collect())
}

/// Largest eigenvalue magnitude from a full Jacobi eigensolve.
pub fn spectral_norm_oracle<A: AsRealMatrix + ?Sized>(a: &A) -> Result<f64> {
    let eig = jacobi_eigenvalues(&a.as_real())?;
    Ok(eig.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

/// `w' A w / |w|^2`.
pub fn rayleigh_lower_bound<A: AsRealMatrix + ?Sized>(a: &A, w: &[f64]) -> Result<f64> {
    let a = a.as_real();
    if w.len() != a.size() {
        return Err(Error::Shape {
            expected: a.size(),
            found: w.len(),
        });
    }
    let norm2 = dot(w, w);
    if norm2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut aw = vec![0.0; w.len()];
    a.matvec_into(w, &mut aw);
    Ok(dot(w, &aw) / norm2)
}
