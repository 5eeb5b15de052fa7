//! Floor-quotient class algebra and the symmetric matrix sequence built on it.
//!
//! For a fixed `n`, the integers `1..=n` split into classes of equal `n / k`
//! (integer division). The largest element of each class forms the set `S`,
//! and multiplication of integers descends to a commutative monoid on the
//! classes. Its integer algebra, modulo the unbounded class, carries a regular
//! representation whose products with the anti-triangular matrix `T` give the
//! symmetric matrices `U = (n / ij)` and `M = (Mertens(n / ij))` indexed by `S`.
//!
//! Modules, bottom-up:
//!
//! * [`arith`]: Möbius sieve and Mertens prefix sums.
//! * [`quotient`]: the representative set `S` and its involution.
//! * [`algebra`]: monoid product, algebra vectors, regular representation.
//! * [`matrices`]: `T`, `U`, `M` and their floor-free real analogues.
//! * [`spectral`]: spectral 2-norm of symmetric matrices.
//! * [`harness`]: table dumps, verification suite, sweeps and SVG plots.

pub mod algebra;
pub mod arith;
pub mod dense;
pub mod error;
pub mod harness;
pub mod matrices;
pub mod quotient;
pub mod spectral;

pub use error::{Error, Result};
