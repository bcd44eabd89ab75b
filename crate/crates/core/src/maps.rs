//! The dP1 birational maps, their inverses, and the autonomous alpha-dP1
//! family with its fixed points, period-2 orbit and QRT invariant.
//!
//! All maps are generic over [`Scalar`]: with [`Rational`] they are exact,
//! which is how the birationality and conservation identities are tested.

use crate::numerics::{Params, Rational, Scalar};
use crate::{Error, Result};

/// A point (x, y) of the plane on which dP1 acts; y_{n+1} = x_n.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneState<T> {
    pub x: T,
    pub y: T,
}

impl<T> PlaneState<T> {
    pub fn new(x: T, y: T) -> Self {
        PlaneState { x, y }
    }
}

impl<T: Scalar> PlaneState<T> {
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> PlaneState<U> {
        PlaneState::new(f(&self.x), f(&self.y))
    }
}

/// Iteration index n of the non-autonomous map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StepIndex(pub i64);

impl From<i64> for StepIndex {
    fn from(n: i64) -> Self {
        StepIndex(n)
    }
}

/// Parameters of the autonomous alpha-dP1 map, alpha playing the role of n/N.
#[derive(Clone, Debug, PartialEq)]
pub struct AutonomousParams<T> {
    pub alpha: T,
    pub r: T,
}

impl<T: Scalar> AutonomousParams<T> {
    pub fn new(alpha: T, r: T) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidParams("alpha-dP1 requires r > 0".into()));
        }
        Ok(AutonomousParams { alpha, r })
    }

    /// The frozen map at alpha = n/N, represented like `like`.
    pub fn frozen(n: i64, params: &Params, like: &T) -> Self {
        AutonomousParams {
            alpha: T::lift(&params.alpha(n), like),
            r: T::lift(params.r(), like),
        }
    }
}

/// phi_n: (x, y) -> (n/(N r x) - 1/r - x - y, x).
///
/// At n = 0 the 1/x term is taken to be 0 even when x = 0, which is the limit
/// used to continue the Freud orbit through the y-axis.
pub fn dp1_forward<T: Scalar>(state: &PlaneState<T>, n: StepIndex, params: &Params) -> Result<PlaneState<T>> {
    let x = &state.x;
    let pole = if n.0 == 0 {
        T::lift_int(0, x)
    } else {
        if x.is_zero_value() {
            return Err(Error::SingularAxis { n: n.0 });
        }
        T::lift(&params.step_coefficient(n.0), x) / x.clone()
    };
    let next = pole - T::lift(&params.inv_r(), x) - x.clone() - state.y.clone();
    Ok(PlaneState::new(next, x.clone()))
}

/// psi_n, the inverse of phi_n: takes (x_{n+1}, y_{n+1}) back to (x_n, y_n).
pub fn dp1_inverse<T: Scalar>(state: &PlaneState<T>, n: StepIndex, params: &Params) -> Result<PlaneState<T>> {
    let y = &state.y;
    let pole = if n.0 == 0 {
        T::lift_int(0, y)
    } else {
        if y.is_zero_value() {
            return Err(Error::SingularAxis { n: n.0 });
        }
        T::lift(&params.step_coefficient(n.0), y) / y.clone()
    };
    let prev_y = pole - T::lift(&params.inv_r(), y) - state.x.clone() - y.clone();
    Ok(PlaneState::new(y.clone(), prev_y))
}

/// One step of alpha-dP1: (x, y) -> (alpha/(r x) - 1/r - x - y, x).
pub fn alpha_dp1_step<T: Scalar>(state: &PlaneState<T>, ap: &AutonomousParams<T>) -> Result<PlaneState<T>> {
    let x = &state.x;
    if x.is_zero_value() {
        return Err(Error::SingularAxis { n: 0 });
    }
    let one = T::lift_int(1, x);
    let next = ap.alpha.clone() / (ap.r.clone() * x.clone()) - one / ap.r.clone() - x.clone() - state.y.clone();
    Ok(PlaneState::new(next, x.clone()))
}

/// The hyperbolic fixed point (omega, omega), omega = (-1 + sqrt(1 + 12 alpha r)) / (6 r).
pub fn alpha_fixed_point<T: Scalar>(ap: &AutonomousParams<T>) -> Result<PlaneState<T>> {
    let one = T::lift_int(1, &ap.r);
    let radicand = one.clone() + T::lift_int(12, &ap.r) * ap.alpha.clone() * ap.r.clone();
    if radicand.is_negative() {
        return Err(Error::ComplexRoot);
    }
    let root = radicand.try_sqrt().ok_or(Error::IrrationalRoot)?;
    let omega = (root - one) / (T::lift_int(6, &ap.r) * ap.r.clone());
    Ok(PlaneState::new(omega.clone(), omega))
}

/// The genuine period-2 orbit for alpha < 0, as the pair
/// ((Omega_+, Omega_-), (Omega_-, Omega_+)) with
/// Omega_pm = (-1 pm sqrt(1 - 4 alpha r)) / (2 r).
pub fn alpha_period2<T: Scalar>(ap: &AutonomousParams<T>) -> Result<(PlaneState<T>, PlaneState<T>)> {
    if !ap.alpha.is_negative() {
        return Err(Error::NotGenuine);
    }
    let (plus, minus) = period2_values(&ap.alpha, &ap.r)?;
    Ok((
        PlaneState::new(plus.clone(), minus.clone()),
        PlaneState::new(minus, plus),
    ))
}

/// (Omega_+, Omega_-) for any alpha with 1 - 4 alpha r >= 0.
pub(crate) fn period2_values<T: Scalar>(alpha: &T, r: &T) -> Result<(T, T)> {
    let one = T::lift_int(1, r);
    let radicand = one.clone() - T::lift_int(4, r) * alpha.clone() * r.clone();
    if radicand.is_negative() {
        return Err(Error::ComplexRoot);
    }
    let root = radicand.try_sqrt().ok_or(Error::IrrationalRoot)?;
    let two_r = T::lift_int(2, r) * r.clone();
    Ok(((root.clone() - one.clone()) / two_r.clone(), (-root - one) / two_r))
}

/// Conserved biquadratic of alpha-dP1:
/// I(x, y) = x y (x + y) + x y / r - (alpha / r)(x + y).
pub fn qrt_invariant<T: Scalar>(state: &PlaneState<T>, ap: &AutonomousParams<T>) -> T {
    let (x, y) = (state.x.clone(), state.y.clone());
    let xy = x.clone() * y.clone();
    let sum = x + y;
    xy.clone() * sum.clone() + xy / ap.r.clone() - ap.alpha.clone() / ap.r.clone() * sum
}

/// Geometric action of the QRT map: intersect the level set of `state` with
/// the vertical line through it, take the other intersection, and reflect in
/// the diagonal.
///
/// For fixed x, I(x, .) = x y^2 + (x^2 + x/r - alpha/r) y - alpha x / r, so the
/// second root follows from Vieta's formula for the sum of roots.
pub fn qrt_vertical_partner<T: Scalar>(state: &PlaneState<T>, ap: &AutonomousParams<T>) -> Result<PlaneState<T>> {
    let x = &state.x;
    if x.is_zero_value() {
        return Err(Error::SingularAxis { n: 0 });
    }
    let linear = x.clone() * x.clone() + x.clone() / ap.r.clone() - ap.alpha.clone() / ap.r.clone();
    let root_sum = -linear / x.clone();
    let other = root_sum - state.y.clone();
    Ok(PlaneState::new(other, x.clone()))
}

/// Residual of Freud's equation r x (x_next + x + x_prev) + x - n/N for a
/// consecutive triple; zero on dP1 orbits.
pub fn freud_residual<T: Scalar>(prev: &T, x: &T, next: &T, n: StepIndex, params: &Params) -> T {
    let r = T::lift(params.r(), x);
    r * x.clone() * (next.clone() + x.clone() + prev.clone()) + x.clone() - T::lift(&params.alpha(n.0), x)
}

/// Composes phi_{n_start}, ..., phi_{n_start + steps - 1}; never crosses a
/// singular step silently.
pub fn forward_steps<T: Scalar>(
    state: &PlaneState<T>,
    n_start: i64,
    steps: usize,
    params: &Params,
) -> Result<Vec<PlaneState<T>>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state.clone());
    for k in 0..steps {
        let next = dp1_forward(out.last().expect("non-empty"), StepIndex(n_start + k as i64), params)?;
        out.push(next);
    }
    Ok(out)
}

/// Convenience for exact tests.
pub fn rational_state(x: (i64, i64), y: (i64, i64)) -> PlaneState<Rational> {
    PlaneState::new(Rational::new(x.0.into(), x.1.into()), Rational::new(y.0.into(), y.1.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{BigReal, Real};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn unit() -> Params {
        Params::unit()
    }

    #[test]
    fn forward_example() {
        let out = dp1_forward(&rational_state((1, 1), (0, 1)), StepIndex(1), &unit()).unwrap();
        assert_eq!(out, rational_state((-1, 1), (1, 1)));
    }

    #[test]
    fn inverse_example() {
        let out = dp1_inverse(&rational_state((-1, 1), (1, 1)), StepIndex(1), &unit()).unwrap();
        assert_eq!(out, rational_state((1, 1), (0, 1)));
    }

    #[test]
    fn inverse_extension_at_zero() {
        let x1 = q(47, 100);
        let out = dp1_inverse(&PlaneState::new(x1.clone(), q(0, 1)), StepIndex(0), &unit()).unwrap();
        assert_eq!(out, PlaneState::new(q(0, 1), -q(1, 1) - x1));
        // and the forward map continues back through it
        let back = dp1_forward(&out, StepIndex(0), &unit()).unwrap();
        assert_eq!(back, PlaneState::new(q(47, 100), q(0, 1)));
    }

    #[test]
    fn singular_axes_are_typed_errors() {
        let on_x_axis = rational_state((3, 1), (0, 1));
        assert_eq!(dp1_inverse(&on_x_axis, StepIndex(2), &unit()), Err(Error::SingularAxis { n: 2 }));
        let on_y_axis = rational_state((0, 1), (3, 1));
        assert_eq!(dp1_forward(&on_y_axis, StepIndex(-4), &unit()), Err(Error::SingularAxis { n: -4 }));
    }

    #[test]
    fn alpha_step_example() {
        let ap = AutonomousParams::new(q(1, 1), q(1, 1)).unwrap();
        let out = alpha_dp1_step(&rational_state((1, 1), (0, 1)), &ap).unwrap();
        assert_eq!(out, rational_state((-1, 1), (1, 1)));
        assert_eq!(qrt_vertical_partner(&rational_state((1, 1), (0, 1)), &ap).unwrap(), out);
    }

    #[test]
    fn fixed_point_closed_forms() {
        let ap0 = AutonomousParams::new(q(0, 1), q(1, 1)).unwrap();
        assert_eq!(alpha_fixed_point(&ap0).unwrap(), rational_state((0, 1), (0, 1)));
        let ap2 = AutonomousParams::new(q(2, 1), q(1, 1)).unwrap();
        let fp = alpha_fixed_point(&ap2).unwrap();
        assert_eq!(fp, rational_state((2, 3), (2, 3)));
        assert_eq!(alpha_dp1_step(&fp, &ap2).unwrap(), fp);

        let ap1 = AutonomousParams::new(1.0f64, 1.0).unwrap();
        let fp1 = alpha_fixed_point(&ap1).unwrap();
        assert!((fp1.x - (13f64.sqrt() - 1.0) / 6.0).abs() < 1e-15);
        assert!((fp1.x - 0.43426).abs() < 1e-5);

        let bad = AutonomousParams::new(q(-1, 1), q(1, 1)).unwrap();
        assert_eq!(alpha_fixed_point(&bad), Err(Error::ComplexRoot));
    }

    #[test]
    fn fixed_point_at_working_precision() {
        let p = 512;
        let ap = AutonomousParams::new(BigReal::from_i64(5, p), BigReal::from_i64(1, p)).unwrap();
        let fp = alpha_fixed_point(&ap).unwrap();
        let img = alpha_dp1_step(&fp, &ap).unwrap();
        assert!((img.x - fp.x.clone()).abs().to_f64() < 1e-150);
    }

    #[test]
    fn period2_closed_forms() {
        let ap = AutonomousParams::new(q(-2, 1), q(1, 1)).unwrap();
        let (a, b) = alpha_period2(&ap).unwrap();
        assert_eq!(a, rational_state((1, 1), (-2, 1)));
        assert_eq!(b, rational_state((-2, 1), (1, 1)));
        assert_eq!(alpha_dp1_step(&a, &ap).unwrap(), b);
        assert_eq!(alpha_dp1_step(&b, &ap).unwrap(), a);

        let ap6 = AutonomousParams::new(q(-6, 1), q(1, 1)).unwrap();
        let (a6, b6) = alpha_period2(&ap6).unwrap();
        assert_eq!(a6, rational_state((2, 1), (-3, 1)));
        assert_eq!(b6, rational_state((-3, 1), (2, 1)));

        let ap0 = AutonomousParams::new(q(0, 1), q(1, 1)).unwrap();
        assert_eq!(alpha_period2(&ap0), Err(Error::NotGenuine));
    }

    #[test]
    fn qrt_invariant_examples() {
        let ap = AutonomousParams::new(1.0f64, 1.0).unwrap();
        assert_eq!(qrt_invariant(&PlaneState::new(0.0, 0.0), &ap), 0.0);
        let w = (13f64.sqrt() - 1.0) / 6.0;
        let i = qrt_invariant(&PlaneState::new(w, w), &ap);
        assert!((i - (2.0 * w.powi(3) + w * w - 2.0 * w)).abs() < 1e-15);
        assert!((i + 0.516).abs() < 1e-3);
    }

    #[test]
    fn qrt_conservation_at_256_bits() {
        let p = 256;
        let ap = AutonomousParams::new(BigReal::from_i64(1, p), BigReal::from_i64(1, p)).unwrap();
        let mut s = PlaneState::new(BigReal::from_f64(0.9, p), BigReal::from_f64(0.6, p));
        let i0 = qrt_invariant(&s, &ap);
        for _ in 0..1000 {
            s = alpha_dp1_step(&s, &ap).unwrap();
        }
        let drift = ((qrt_invariant(&s, &ap) - i0.clone()) / i0).abs();
        assert!(drift.to_f64() < 1e-3);
    }

    #[test]
    fn freud_residual_detects_perturbation() {
        let params = unit();
        let s0 = rational_state((3, 2), (1, 4));
        let traj = forward_steps(&s0, 1, 2, &params).unwrap();
        // x_0 = y, x_1 = x, x_2 = next
        let res = freud_residual(&s0.y, &s0.x, &traj[1].x, StepIndex(1), &params);
        assert!(res.is_zero());
        let bumped = &traj[1].x + q(1, 1);
        let res2 = freud_residual(&s0.y, &s0.x, &bumped, StepIndex(1), &params);
        assert_eq!(res2, params.r() * &s0.x);
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..9)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| q(n, d))
    }

    fn params_strategy() -> impl Strategy<Value = Params> {
        (1i64..6, 1i64..4, 1i64..6, 1i64..4)
            .prop_map(|(rn, rd, nn, nd)| Params::new(q(rn, rd), q(nn, nd)).unwrap())
    }

    proptest! {
        #[test]
        fn forward_inverse_round_trip(x in nonzero_rational(), y in nonzero_rational(),
                                      n in -30i64..30, params in params_strategy()) {
            let s = PlaneState::new(x, y);
            let fwd = dp1_forward(&s, StepIndex(n), &params).unwrap();
            if !fwd.y.is_zero() {
                prop_assert_eq!(dp1_inverse(&fwd, StepIndex(n), &params).unwrap(), s.clone());
            }
            let back = dp1_inverse(&s, StepIndex(n), &params).unwrap();
            prop_assert_eq!(dp1_forward(&back, StepIndex(n), &params).unwrap(), s);
        }

        #[test]
        fn geometric_action_equals_step(x in nonzero_rational(), y in nonzero_rational(),
                                        alpha in nonzero_rational(), r in 1i64..7) {
            let ap = AutonomousParams::new(alpha, q(r, 2)).unwrap();
            let s = PlaneState::new(x, y);
            let step = alpha_dp1_step(&s, &ap).unwrap();
            prop_assert_eq!(qrt_vertical_partner(&s, &ap).unwrap(), step.clone());
            prop_assert_eq!(qrt_invariant(&step, &ap), qrt_invariant(&s, &ap));
        }

        #[test]
        fn freud_residual_vanishes_on_orbits(x in nonzero_rational(), y in nonzero_rational(),
                                             n in 1i64..20, params in params_strategy()) {
            let s = PlaneState::new(x, y);
            if let Ok(traj) = forward_steps(&s, n, 3, &params) {
                for k in 1..3 {
                    let res = freud_residual(&traj[k - 1].x, &traj[k].x, &traj[k + 1].x,
                                             StepIndex(n + k as i64), &params);
                    prop_assert!(res.is_zero());
                }
            }
        }

        #[test]
        fn period2_points_differ(alpha in -50i64..0, r in 1i64..5) {
            let ap = AutonomousParams::new(alpha as f64, r as f64).unwrap();
            let (a, b) = alpha_period2(&ap).unwrap();
            prop_assert!(a.x != b.x);
            let img = alpha_dp1_step(&a, &ap).unwrap();
            prop_assert!((img.x - b.x).abs() < 1e-9 * (1.0 + b.x.abs()));
        }
    }
}
