//! Closed-form (x, y, n) parametrization of the center manifold at P_inf for
//! N = 1, accurate through eighth order in the parameter.
//!
//! The parameter is related to the (s, f, u) coordinate by u_sfu = -u / r,
//! so that x = -1/(r u_sfu) = 1/u.

use num_traits::One;

use crate::maps::PlaneState;
use crate::numerics::{Params, Rational, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CenterPoint<T> {
    pub plane: PlaneState<T>,
    /// The (generally non-integer) step index at which the point lies.
    pub n_value: T,
}

fn horner<T: Scalar>(coeffs: &[T], u: &T) -> T {
    let mut acc = T::lift_int(0, u);
    for c in coeffs.iter().rev() {
        acc = acc * u.clone() + c.clone();
    }
    acc
}

pub fn center_manifold_xyn<T: Scalar>(u: &T, params: &Params) -> Result<CenterPoint<T>> {
    if !params.n_scale().is_one() {
        return Err(Error::InvalidParams(format!(
            "center manifold parametrization needs N = 1, got N = {}",
            params.n_scale()
        )));
    }
    if u.is_zero_value() {
        return Err(Error::PlaneAtInfinity);
    }
    let r = T::lift(params.r(), u);
    let int = |v: i64| T::lift_int(v, u);
    let r2 = r.clone() * r.clone();
    let r3 = r2.clone() * r.clone();
    let r4 = r3.clone() * r.clone();
    let r5 = r4.clone() * r.clone();
    let r6 = r5.clone() * r.clone();

    // 46656 r^6 y u, collected by powers of u
    let y_num = [
        int(46656) * r6.clone(),
        int(0),
        int(-7776) * r5,
        int(1296) * r4.clone(),
        int(-648) * r4 - int(216) * r3.clone(),
        int(324) * r3.clone() + int(36) * r2.clone(),
        int(-36) * r3 - int(108) * r2.clone() - int(6) * r.clone(),
        int(12) * r2.clone() + int(30) * r.clone() + int(1),
    ];
    let y = horner(&y_num, u) / (int(46656) * r6 * u.clone());

    let q = |n: i64, d: i64| T::lift(&Rational::new(n.into(), d.into()), u);
    let r4_lift = r2.clone() * r2.clone();
    let n_num = [
        int(3) * r.clone(),
        int(1),
        int(0),
        int(0),
        q(-1, 36) / r.clone(),
        q(1, 72) / r2.clone(),
        q(-1, 216) / (r2.clone() * r.clone()),
        q(5, 3888) / r4_lift,
    ];
    let n_value = horner(&n_num, u) / (u.clone() * u.clone());
    let x = int(1) / u.clone();
    Ok(CenterPoint {
        plane: PlaneState::new(x, y),
        n_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansions::invariant::invariant_curve_at;
    use crate::expansions::series::Series;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// The printed forms, term by term, evaluated exactly.
    fn printed(u: &Rational, r: &Rational) -> (Rational, Rational) {
        let one = Rational::one();
        let p = |b: &Rational, k: u32| -> Rational { (0..k).fold(one.clone(), |a, _| a * b) };
        let c = |v: i64| Rational::from_integer(v.into());
        let y = (c(12) * p(r, 2) * (p(u, 2) - c(9) * u + c(3)) * p(u, 5)
            - c(36) * p(r, 3) * (p(u, 2) - c(9) * u + c(6)) * p(u, 4)
            + c(648) * p(r, 4) * (c(2) - u) * p(u, 3)
            - c(7776) * p(r, 5) * p(u, 2)
            + c(46656) * p(r, 6)
            - c(6) * r * (c(1) - c(5) * u) * p(u, 6)
            + p(u, 7))
            / (c(46656) * p(r, 6) * u);
        let n = (q(5, 3888) * p(u, 7) / p(r, 4) - q(1, 216) * p(u, 6) / p(r, 3)
            + q(1, 72) * p(u, 5) / p(r, 2)
            - q(1, 36) * p(u, 4) / r
            + c(3) * r
            + u)
            / p(u, 2);
        (y, n)
    }

    #[test]
    fn expanded_coefficients_match_printed_form() {
        for (un, ud, rn, rd) in [(1, 3, 1, 1), (-2, 7, 3, 2), (5, 1, 1, 9)] {
            let (u, r) = (q(un, ud), q(rn, rd));
            let params = Params::new(r.clone(), Rational::one()).unwrap();
            let pt = center_manifold_xyn(&u, &params).unwrap();
            let (y, n) = printed(&u, &r);
            assert_eq!(pt.plane.y, y);
            assert_eq!(pt.n_value, n);
            assert_eq!(&pt.plane.x * &u, Rational::one());
        }
    }

    #[test]
    fn agrees_with_invariant_curve_through_degree_seven() {
        // With u_sfu = -u/r and gamma = r:
        //   y u   = s(u_sfu) + u_sfu - 1
        //   n u^2 = r (s + f)(u_sfu) - u - r
        for r in [q(1, 1), q(3, 2), q(2, 5)] {
            let params = Params::new(r.clone(), Rational::one()).unwrap();
            let (s, f) = invariant_curve_at(crate::expansions::Side::PInf, 8, &r).unwrap();
            let sub = Series::from_coeffs(vec![q(0, 1), -r.recip()], 8);
            let s_u = s.compose(&sub).unwrap();
            let h_u = (&s + &f).compose(&sub).unwrap();
            let mut y_series = &s_u + &sub;
            y_series.set_coeff(0, y_series.coeff(0) - Rational::one());
            let mut n_series = h_u.scale(&r);
            n_series.set_coeff(0, n_series.coeff(0) - &r);
            n_series.set_coeff(1, n_series.coeff(1) - Rational::one());
            // compare the polynomial parts by sampling exact values at 9
            // distinct points: both sides are polynomials of degree <= 8, and
            // the printed forms stop at degree 7
            let y_poly = y_series.truncate(7);
            let n_poly = n_series.truncate(7);
            for k in 1..=9 {
                let u = q(k, 11);
                let pt = center_manifold_xyn(&u, &params).unwrap();
                assert_eq!(&pt.plane.y * &u, y_poly.eval_real(&u), "y, r = {r}");
                assert_eq!(&pt.n_value * &u * &u, n_poly.eval_real(&u), "n, r = {r}");
            }
        }
    }

    #[test]
    fn leading_fixed_point_relation() {
        // n u^2 -> 3r + u, i.e. alpha r w^2 + w - 3 = 0 at w = u/r... to first order
        let params = Params::new(q(2, 1), Rational::one()).unwrap();
        let u = 1e-4f64;
        let pt = center_manifold_xyn(&u, &params).unwrap();
        let lead = (3.0 * 2.0 + u) / (u * u);
        assert!(((pt.n_value - lead) / lead).abs() < 1e-9);
    }

    #[test]
    fn rejects_zero_and_general_scale() {
        let p = Params::unit();
        assert_eq!(center_manifold_xyn(&0.0f64, &p), Err(Error::PlaneAtInfinity));
        let p2 = Params::new(q(1, 1), q(2, 1)).unwrap();
        assert!(center_manifold_xyn(&0.5f64, &p2).is_err());
    }

    proptest! {
        #[test]
        fn x_times_u_is_one(num in -50i64..50, den in 1i64..50) {
            prop_assume!(num != 0);
            let u = q(num, den);
            let pt = center_manifold_xyn(&u, &Params::unit()).unwrap();
            prop_assert_eq!(pt.plane.x * u, Rational::one());
        }
    }
}
