//! High-precision laboratory for the discrete Painlevé I map
//!
//! ```text
//! x_{n+1} = n / (N r x_n) - 1/r - x_n - y_n,    y_{n+1} = x_n
//! ```
//!
//! The crate covers the forward and inverse maps and the frozen alpha-dP1
//! family ([`maps`]), the asymptotic (s, f, u) and theta coordinates with
//! their fixed points and periodic orbits ([`coords`]), non-polar initial
//! data from the Lew-Quarles contraction and from moments of the quartic
//! weight ([`lewquarles`]), exact invariant-curve series and asymptotic
//! expansions ([`expansions`]), and orbit diagnostics with CSV/JSON export
//! ([`diagnostics`]).
//!
//! Most algorithms are generic over [`numerics::Scalar`]; the aliases below
//! name the instantiations used in practice.

pub mod coords;
pub mod diagnostics;
pub mod error;
pub mod expansions;
pub mod lewquarles;
pub mod maps;
pub mod numerics;

pub use error::{Error, Result};
pub use numerics::{BigReal, GammaPoly, Params, Rational};

/// Plane state at working precision.
pub type BigPlaneState = maps::PlaneState<BigReal>;
/// Plane state in exact arithmetic.
pub type ExactPlaneState = maps::PlaneState<Rational>;
/// Plane state in hardware doubles.
pub type PlaneStateF64 = maps::PlaneState<f64>;
/// Plane state in hardware singles.
pub type PlaneStateF32 = maps::PlaneState<f32>;
pub type BigSfuState = coords::SfuState<BigReal>;
pub type ExactSfuState = coords::SfuState<Rational>;
pub type SfuStateF64 = coords::SfuState<f64>;
