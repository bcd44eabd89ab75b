//! Invariant curves (s(u), f(u), u) of the (s, f, u) system through the fixed
//! points at infinity, solved order by order.
//!
//! Invariance means s(Z u) = Z f(u) and f(Z u) = Z^2 (s(u) + gamma u^2) with
//! Z = 1/(u + f(u) - 1). Once the coefficients below degree k are known, the
//! degree-k part of both residuals is affine in (s_k, f_k) with a constant
//! rational matrix; it is found by probing and solved by Cramer's rule.

use num_traits::Zero;

use super::series::{Coefficient, Series, USeries};
use crate::numerics::{GammaPoly, Rational};
use crate::{Error, Result};

/// Which fixed point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    /// (2, 2, 0), reached as n -> +infinity.
    PInf,
    /// (0, 0, 0), reached as n -> -infinity.
    PMinf,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::PInf => "pinf",
            Side::PMinf => "pminf",
        }
    }
}

/// (s(Z u) - Z f, f(Z u) - Z^2 (s + gamma u^2)) at the common order of s, f.
pub fn invariance_residual<C: Coefficient>(s: &Series<C>, f: &Series<C>, gamma: &C) -> Result<(Series<C>, Series<C>)> {
    let order = s.order().min(f.order());
    let u = Series::variable(order);
    let one = Series::constant(C::one(), order);
    let z = (&(&u + f) - &one).recip()?;
    let w = &z * &u;
    let r1 = &s.compose(&w)? - &(&z * f);
    let u2 = &u * &u;
    let inner = s + &u2.scale(gamma);
    let r2 = &f.compose(&w)? - &(&(&z * &z) * &inner);
    Ok((r1, r2))
}

fn anchor<C: Coefficient>(side: Side) -> (Vec<C>, Vec<C>) {
    let q = |v: i64| C::from_rational(Rational::from_integer(v.into()));
    match side {
        // tangent to the center direction: linear term -u in both
        Side::PInf => (vec![q(2), q(-1)], vec![q(2), q(-1)]),
        Side::PMinf => (vec![q(0), q(0)], vec![q(0), q(0)]),
    }
}

fn degree_k<C: Coefficient>(s: &Series<C>, f: &Series<C>, gamma: &C, k: usize) -> Result<(C, C)> {
    let (r1, r2) = invariance_residual(s, f, gamma)?;
    Ok((r1.coeff(k), r2.coeff(k)))
}

fn rational_entry<C: Coefficient>(c: C, k: usize) -> Result<Rational> {
    c.as_rational().ok_or_else(|| Error::Unsolvable {
        degree: k,
        reason: format!("linear part {c:?} is not a rational constant"),
    })
}

/// Solves for the invariant curve through `side` to degree `order` with
/// coefficients in `C`, gamma given as an element of `C`.
pub fn solve_invariant_curve<C: Coefficient>(side: Side, gamma: &C, order: usize) -> Result<(Series<C>, Series<C>)> {
    if order < 2 {
        return Err(Error::InvalidParams(format!("invariant curve order must be >= 2, got {order}")));
    }
    let (s0, f0) = anchor::<C>(side);
    let mut s = Series::from_coeffs(s0, order);
    let mut f = Series::from_coeffs(f0, order);

    let (r1, r2) = invariance_residual(&s.truncate(1), &f.truncate(1), gamma)?;
    if !(r1.coeffs().iter().all(Zero::is_zero) && r2.coeffs().iter().all(Zero::is_zero)) {
        return Err(Error::Unsolvable {
            degree: 1,
            reason: "anchor is not invariant to first order".into(),
        });
    }

    for k in 2..=order {
        let sk = s.truncate(k);
        let fk = f.truncate(k);
        let base = degree_k(&sk, &fk, gamma, k)?;
        let mut sa = sk.clone();
        sa.set_coeff(k, C::one());
        let ra = degree_k(&sa, &fk, gamma, k)?;
        let mut fb = fk.clone();
        fb.set_coeff(k, C::one());
        let rb = degree_k(&sk, &fb, gamma, k)?;

        let m11 = rational_entry(ra.0 - base.0.clone(), k)?;
        let m21 = rational_entry(ra.1 - base.1.clone(), k)?;
        let m12 = rational_entry(rb.0 - base.0.clone(), k)?;
        let m22 = rational_entry(rb.1 - base.1.clone(), k)?;
        let det = &m11 * &m22 - &m12 * &m21;
        if det.is_zero() {
            return Err(Error::Unsolvable {
                degree: k,
                reason: "degree-k linear system is singular".into(),
            });
        }
        let c = |q: Rational| C::from_rational(q);
        // M (a, b) = -base
        let a = (base.1.clone() * c(m12.clone()) - base.0.clone() * c(m22.clone())) * c(det.recip());
        let b = (base.0.clone() * c(m21.clone()) - base.1.clone() * c(m11.clone())) * c(det.recip());
        s.set_coeff(k, a);
        f.set_coeff(k, b);

        let check = degree_k(&s.truncate(k), &f.truncate(k), gamma, k)?;
        if !(check.0.is_zero() && check.1.is_zero()) {
            return Err(Error::Unsolvable {
                degree: k,
                reason: "residual did not vanish after the solve".into(),
            });
        }
    }
    Ok((s, f))
}

/// s_inf(u), f_inf(u) with coefficients exact polynomials in gamma.
pub fn invariant_curve_p_inf(order: usize) -> Result<(USeries, USeries)> {
    solve_invariant_curve(Side::PInf, &GammaPoly::gamma(), order)
}

/// s_minf(u), f_minf(u) with coefficients exact polynomials in gamma.
pub fn invariant_curve_p_minf(order: usize) -> Result<(USeries, USeries)> {
    solve_invariant_curve(Side::PMinf, &GammaPoly::gamma(), order)
}

pub fn invariant_curve(side: Side, order: usize) -> Result<(USeries, USeries)> {
    solve_invariant_curve(side, &GammaPoly::gamma(), order)
}

/// The same curve at a fixed rational gamma, without symbolic coefficients.
pub fn invariant_curve_at(side: Side, order: usize, gamma: &Rational) -> Result<(Series<Rational>, Series<Rational>)> {
    solve_invariant_curve(side, gamma, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// gamma/den * (c0 + c1 gamma + ...)
    fn gp(den: i64, cs: &[i64]) -> GammaPoly {
        let mut coeffs = vec![q(0, 1)];
        coeffs.extend(cs.iter().map(|&c| q(c, den)));
        GammaPoly::new(coeffs)
    }

    #[test]
    fn p_inf_low_order() {
        let (s, f) = invariant_curve_p_inf(6).unwrap();
        assert_eq!(s.coeff(0), GammaPoly::from_ints(&[2]));
        assert_eq!(s.coeff(1), GammaPoly::from_ints(&[-1]));
        assert_eq!(s.coeff(2), gp(6, &[-1]));
        assert_eq!(f.coeff(2), gp(6, &[1]));
    }

    #[test]
    fn p_minf_low_order() {
        let (s, f) = invariant_curve_p_minf(4).unwrap();
        assert_eq!(s.coeff(2), gp(2, &[-1]));
        assert_eq!(s.coeff(3), gp(4, &[-1]));
        assert_eq!(s.coeff(4), gp(8, &[-1, 1]));
        assert_eq!(f.coeff(2), gp(2, &[1]));
        let sum = &s + &f;
        assert!(sum.coeff(2).is_zero() && sum.coeff(3).is_zero());
        assert!(!sum.coeff(4).is_zero());
    }

    #[test]
    fn residual_vanishes_through_order() {
        for side in [Side::PInf, Side::PMinf] {
            let (s, f) = invariant_curve(side, 9).unwrap();
            let (r1, r2) = invariance_residual(&s, &f, &GammaPoly::gamma()).unwrap();
            assert!(r1.coeffs().iter().all(Zero::is_zero), "{side:?}");
            assert!(r2.coeffs().iter().all(Zero::is_zero), "{side:?}");
        }
    }

    #[test]
    fn perturbed_curve_leaves_residual() {
        let (mut s, f) = invariant_curve_p_inf(5).unwrap();
        s.set_coeff(4, s.coeff(4) + GammaPoly::from_ints(&[1]));
        let (r1, _) = invariance_residual(&s, &f, &GammaPoly::gamma()).unwrap();
        assert!(!r1.coeff(4).is_zero());
    }

    #[test]
    fn fast_path_matches_symbolic() {
        for side in [Side::PInf, Side::PMinf] {
            let (s, f) = invariant_curve(side, 8).unwrap();
            for g in [q(1, 1), q(3, 7), q(-2, 5)] {
                let (sr, fr) = invariant_curve_at(side, 8, &g).unwrap();
                assert_eq!(s.at_gamma(&g), sr);
                assert_eq!(f.at_gamma(&g), fr);
            }
        }
    }

    #[test]
    fn rejects_low_order() {
        assert!(invariant_curve_p_inf(1).is_err());
    }
}
