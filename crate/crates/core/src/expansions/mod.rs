//! Invariant-curve series at the two fixed points at infinity and the
//! asymptotic expansions derived from them.

pub mod asymptotic;
pub mod center;
pub mod invariant;
pub mod quad;
pub mod series;

pub use asymptotic::{u_asymptotic, x_asymptotic, Branch, HalfPowerSeries, HalfPowerTerm};
pub use center::{center_manifold_xyn, CenterPoint};
pub use invariant::{
    invariance_residual, invariant_curve, invariant_curve_at, invariant_curve_p_inf,
    invariant_curve_p_minf, solve_invariant_curve, Side,
};
pub use quad::QuadGamma;
pub use series::{Coefficient, Series, SeriesTerm, USeries};
