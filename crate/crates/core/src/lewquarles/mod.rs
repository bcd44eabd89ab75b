//! Non-polar initial conditions.
//!
//! A positive solution of dP1 with x_n = xi_n, y_1 = xi_0 satisfies, with
//! kappa_n^2 = n/(N r),
//!
//! ```text
//! xi_n = kappa_n g((xi_{n-1} + xi_{n+1}) / (2 kappa_n) + 1 / (2 r kappa_n)),
//! g(tau) = -tau + sqrt(1 + tau^2),
//! ```
//!
//! and iterating the right-hand side from the zero sequence is a contraction
//! (about a factor 1/2 per sweep). After `nc` sweeps the first entry depends
//! only on kappa_1 ..= kappa_{nc+1}, so a sequence of length `nc + 1` computes
//! xi_1 exactly as the infinite problem would.

mod moments;

pub use moments::{freud_init_from_moments, moments, quadrature_moment, MomentTable};

use crate::numerics::{Params, Rational, Real};
use crate::{Error, Result};

/// kappa_n = sqrt(n/(N r)) for n = first, first + 1, ...
#[derive(Clone, Debug)]
pub struct KappaSequence<T> {
    first: i64,
    kappa: Vec<T>,
    kappa_sq: Vec<T>,
}

impl<T: Real> KappaSequence<T> {
    pub fn new(first: i64, len: usize, params: &Params, like: &T) -> Result<Self> {
        if first < 1 {
            return Err(Error::InvalidParams(format!("kappa sequence must start at n >= 1, got {first}")));
        }
        let kappa_sq: Vec<T> = (0..len)
            .map(|k| T::lift(&params.step_coefficient(first + k as i64), like))
            .collect();
        let kappa = kappa_sq.iter().map(Real::sqrt).collect();
        Ok(KappaSequence { first, kappa, kappa_sq })
    }

    pub fn first_index(&self) -> i64 {
        self.first
    }

    pub fn len(&self) -> usize {
        self.kappa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappa.is_empty()
    }

    pub fn kappa(&self, n: i64) -> &T {
        &self.kappa[(n - self.first) as usize]
    }

    pub fn kappa_sq(&self, n: i64) -> &T {
        &self.kappa_sq[(n - self.first) as usize]
    }

    pub fn values(&self) -> &[T] {
        &self.kappa
    }
}

/// A finite section (xi_first, ..., xi_{first+M-1}) together with the fixed
/// left value xi_{first-1} = `xi0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LQState<T> {
    pub first_index: i64,
    pub xi0: T,
    pub xi: Vec<T>,
}

impl<T: Real> LQState<T> {
    pub fn zeros(first_index: i64, xi0: T, len: usize) -> Self {
        let zero = T::lift_int(0, &xi0);
        LQState {
            first_index,
            xi: vec![zero; len],
            xi0,
        }
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// xi at absolute index n (n = first_index - 1 gives xi0).
    pub fn get(&self, n: i64) -> Option<&T> {
        if n == self.first_index - 1 {
            return Some(&self.xi0);
        }
        let k = n - self.first_index;
        (k >= 0).then(|| self.xi.get(k as usize)).flatten()
    }

    pub fn last_index(&self) -> i64 {
        self.first_index + self.xi.len() as i64 - 1
    }
}

/// g(tau) = -tau + sqrt(1 + tau^2), the positive root of g^2 + 2 tau g - 1.
/// Evaluated as 1/(tau + sqrt(1 + tau^2)) for tau > 0 to avoid cancellation.
pub fn g_of_tau<T: Real>(tau: &T) -> T {
    let one = T::lift_int(1, tau);
    let root = (one.clone() + tau.clone() * tau.clone()).sqrt();
    if tau.is_positive() {
        one / (tau.clone() + root)
    } else {
        root - tau.clone()
    }
}

/// One Jacobi sweep of T. Entries beyond the end read kappa at that index.
///
/// With S = xi_{n-1} + xi_{n+1} + 1/r, kappa_n g(S/(2 kappa_n)) equals
/// 2 kappa_n^2 / (S + sqrt(S^2 + 4 kappa_n^2)), which needs no division by
/// kappa and is what is evaluated.
pub fn lq_contract<T: Real>(state: &LQState<T>, kappas: &KappaSequence<T>, params: &Params) -> Result<LQState<T>> {
    let mut out = state.clone();
    contract_into(state, kappas, &T::lift(&params.inv_r(), &state.xi0), &mut out.xi)?;
    Ok(out)
}

fn contract_into<T: Real>(state: &LQState<T>, kappas: &KappaSequence<T>, inv_r: &T, out: &mut [T]) -> Result<()> {
    let m = state.xi.len();
    let needed_last = state.first_index + m as i64;
    if kappas.first_index() != state.first_index || kappas.len() < m + 1 {
        return Err(Error::InvalidParams(format!(
            "kappa sequence must cover n = {} ..= {needed_last}",
            state.first_index
        )));
    }
    let two = T::lift_int(2, inv_r);
    let four = T::lift_int(4, inv_r);
    for k in 0..m {
        let left = if k == 0 { &state.xi0 } else { &state.xi[k - 1] };
        let right = if k + 1 < m { &state.xi[k + 1] } else { &kappas.kappa[m] };
        let s = left.clone() + right.clone() + inv_r.clone();
        let k2 = &kappas.kappa_sq[k];
        let root = (s.clone() * s.clone() + four.clone() * k2.clone()).sqrt();
        out[k] = two.clone() * k2.clone() / (s + root);
    }
    Ok(())
}

fn check_length(m: usize, nc: usize) -> Result<()> {
    if m < 2 || m < nc + 1 {
        return Err(Error::InsufficientLength {
            len: m,
            contractions: nc,
            needed: (nc + 1).max(2),
        });
    }
    Ok(())
}

fn solve_from<T: Real>(first: i64, xi0: &T, m: usize, nc: usize, params: &Params) -> Result<LQState<T>> {
    check_length(m, nc)?;
    if xi0.is_negative() {
        return Err(Error::InvalidParams("xi0 must be >= 0".into()));
    }
    let kappas = KappaSequence::new(first, m + 1, params, xi0)?;
    let inv_r = T::lift(&params.inv_r(), xi0);
    let mut cur = LQState::zeros(first, xi0.clone(), m);
    let mut next = cur.xi.clone();
    for _ in 0..nc {
        contract_into(&cur, &kappas, &inv_r, &mut next)?;
        std::mem::swap(&mut cur.xi, &mut next);
    }
    Ok(cur)
}

/// Applies `nc` contractions to the zero sequence of length `m` with fixed
/// xi_0 = `xi0`. The result seeds the orbit (x_1, y_1) = (xi_1, xi_0).
/// Precision follows `xi0`.
pub fn lq_solve<T: Real>(xi0: &T, m: usize, nc: usize, params: &Params) -> Result<LQState<T>> {
    solve_from(1, xi0, m, nc, params)
}

/// The same contraction on the kappa sequence shifted to start at n0 + 1,
/// with xi at n0 held at `x_n0 > 0`.
pub fn lq_solve_truncated<T: Real>(n0: i64, x_n0: &T, m: usize, nc: usize, params: &Params) -> Result<LQState<T>> {
    if n0 < 1 {
        return Err(Error::InvalidParams(format!("n0 must be >= 1, got {n0}")));
    }
    if !x_n0.is_positive() {
        return Err(Error::InvalidParams("x_n0 must be > 0".into()));
    }
    solve_from(n0 + 1, x_n0, m, nc, params)
}

/// Largest |(T x)_n - x_n| over the state.
pub fn lq_residual<T: Real>(state: &LQState<T>, kappas: &KappaSequence<T>, params: &Params) -> Result<T> {
    let image = lq_contract(state, kappas, params)?;
    let mut worst = T::lift_int(0, &state.xi0);
    for (a, b) in image.xi.iter().zip(&state.xi) {
        let d = (a.clone() - b.clone()).abs();
        if d > worst {
            worst = d;
        }
    }
    Ok(worst)
}

/// Number of trailing entries treated as influenced by the truncation
/// boundary. The boundary perturbation decays by about 0.21 per index, so 40
/// entries damp it below 1e-27.
pub const EDGE_MARGIN: usize = 40;

/// xi_n / kappa_n.
pub fn lq_ratio<T: Real>(state: &LQState<T>, kappas: &KappaSequence<T>, n: i64) -> Option<T> {
    let xi = state.get(n)?;
    if n < kappas.first_index() || n >= kappas.first_index() + kappas.len() as i64 {
        return None;
    }
    Some(xi.clone() / kappas.kappa(n).clone())
}

/// xi_m / kappa_m at the last index clear of the truncation edge,
/// m = M - EDGE_MARGIN. Tends to (mu + 1 + 1/mu)^{-1/2} = 1/sqrt(3) as m grows.
pub fn lq_ratio_limit_check<T: Real>(state: &LQState<T>, kappas: &KappaSequence<T>) -> Result<T> {
    if state.len() < 100 {
        return Err(Error::InsufficientLength {
            len: state.len(),
            contractions: 0,
            needed: 100,
        });
    }
    let m = state.last_index() - EDGE_MARGIN as i64;
    lq_ratio(state, kappas, m).ok_or_else(|| Error::InvalidParams("kappa sequence does not cover the state".into()))
}

/// (mu + 1 + 1/mu)^{-1/2}, the limiting ratio for kappa_{m+1}/kappa_m -> mu.
pub fn theta_limit<T: Real>(mu: &T) -> T {
    let one = T::lift_int(1, mu);
    let sum = mu.clone() + one.clone() + one.clone() / mu.clone();
    one / sum.sqrt()
}

/// Lemma check on interior indices: (T kappa)_n < xi_n < kappa_n.
pub fn bracketing_holds<T: Real>(state: &LQState<T>, kappas: &KappaSequence<T>, params: &Params, interior: usize) -> Result<bool> {
    let kappa_state = LQState {
        first_index: state.first_index,
        xi0: state.xi0.clone(),
        xi: kappas.values()[..state.len()].to_vec(),
    };
    let t_kappa = lq_contract(&kappa_state, kappas, params)?;
    Ok((0..interior.min(state.len())).all(|k| t_kappa.xi[k] < state.xi[k] && state.xi[k] < kappas.values()[k]))
}

/// xi_n ~ sqrt(n/(3 N r)) in exact squared form.
pub fn leading_growth_sq(n: i64, params: &Params) -> Rational {
    params.step_coefficient(n) / Rational::from_integer(3.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{dp1_forward, PlaneState, StepIndex};
    use crate::numerics::{BigReal, Scalar};
    use proptest::prelude::*;

    #[test]
    fn g_examples() {
        assert_eq!(g_of_tau(&0.0f64), 1.0);
        assert!((g_of_tau(&0.75f64) - 0.5).abs() < 1e-15);
        let p = 256;
        let g = g_of_tau(&BigReal::parse("0.75", p).unwrap());
        assert_eq!(g, BigReal::parse("0.5", p).unwrap());
        // large tau: the stable branch keeps full relative accuracy
        let t = BigReal::from_i64(10, p).sqrt() * BigReal::from_i64(1_000_000_000, p);
        let g = g_of_tau(&t);
        let q = g.clone() * g.clone() + BigReal::from_i64(2, p) * t * g - BigReal::one(p);
        assert!(q.abs().to_f64() < 1e-70);
    }

    #[test]
    fn first_sweep_from_zero() {
        let params = Params::unit();
        let kappas = KappaSequence::new(1, 4, &params, &0.0f64).unwrap();
        let state = LQState::zeros(1, 0.0f64, 3);
        let once = lq_contract(&state, &kappas, &params).unwrap();
        let k1 = 1.0f64;
        let expect = k1 * g_of_tau(&(1.0 / (2.0 * k1)));
        assert!((once.xi[0] - expect).abs() < 1e-15);
        assert!(once.xi.iter().all(|v| *v > 0.0));
    }

    #[test]
    fn contract_form_matches_g() {
        let params = Params::new(Rational::new(3.into(), 2.into()), Rational::new(5.into(), 4.into())).unwrap();
        let kappas = KappaSequence::new(1, 6, &params, &0.0f64).unwrap();
        let state = LQState {
            first_index: 1,
            xi0: 0.3,
            xi: vec![0.4, 0.9, 1.3, 0.2, 0.7],
        };
        let out = lq_contract(&state, &kappas, &params).unwrap();
        let inv_r = 2.0 / 3.0;
        for k in 0..5 {
            let left = if k == 0 { state.xi0 } else { state.xi[k - 1] };
            let right = if k < 4 { state.xi[k + 1] } else { kappas.values()[5] };
            let kap = kappas.values()[k];
            let tau = (left + right) / (2.0 * kap) + inv_r / (2.0 * kap);
            assert!((out.xi[k] - kap * g_of_tau(&tau)).abs() < 1e-14);
        }
    }

    #[test]
    fn insufficient_length() {
        let err = lq_solve(&0.0f64, 10, 10, &Params::unit()).unwrap_err();
        assert_eq!(err, Error::InsufficientLength { len: 10, contractions: 10, needed: 11 });
    }

    #[test]
    fn freud_value_and_convergence() {
        let p = 512;
        let params = Params::unit().with_precision(p).unwrap();
        let zero = BigReal::zero(p);
        let s100 = lq_solve(&zero, 101, 100, &params).unwrap();
        let s200 = lq_solve(&zero, 201, 200, &params).unwrap();
        let s400 = lq_solve(&zero, 401, 400, &params).unwrap();
        let x1 = s400.xi[0].to_f64();
        assert!((x1 - 0.47).abs() < 0.01, "{x1}");
        let d1 = (s200.xi[0].clone() - s100.xi[0].clone()).abs();
        let d2 = (s400.xi[0].clone() - s200.xi[0].clone()).abs();
        assert!(d2 < d1);
        // roughly a factor 2 per sweep
        assert!(d1.to_f64() < 1e-25);
    }

    #[test]
    fn longer_sequence_does_not_change_first_entry() {
        let p = 256;
        let params = Params::unit().with_precision(p).unwrap();
        let zero = BigReal::zero(p);
        let short = lq_solve(&zero, 61, 60, &params).unwrap();
        let long = lq_solve(&zero, 200, 60, &params).unwrap();
        assert_eq!(short.xi[0], long.xi[0]);
    }

    #[test]
    fn fixed_point_brackets_and_satisfies_freud() {
        let p = 512;
        let params = Params::unit().with_precision(p).unwrap();
        let xi0 = BigReal::from_i64(3, p);
        let state = lq_solve(&xi0, 601, 600, &params).unwrap();
        let kappas = KappaSequence::new(1, 602, &params, &xi0).unwrap();
        assert!(lq_residual(&state, &kappas, &params).unwrap().to_f64() < 1e-150);
        assert!(bracketing_holds(&state, &kappas, &params, 500).unwrap());
        // Freud's relation on interior entries
        for k in 1..400 {
            let n = k as i64 + 1;
            let res = crate::maps::freud_residual(&state.xi[k - 1], &state.xi[k], &state.xi[k + 1], StepIndex(n), &params);
            assert!(res.abs().to_f64() < 1e-140, "n = {n}");
        }
    }

    #[test]
    fn truncated_reproduces_tail() {
        let p = 512;
        let params = Params::unit().with_precision(p).unwrap();
        let zero = BigReal::zero(p);
        let freud = lq_solve(&zero, 601, 600, &params).unwrap();
        for n0 in [1i64, 10] {
            let x_n0 = freud.get(n0).unwrap().clone();
            let tail = lq_solve_truncated(n0, &x_n0, 601, 600, &params).unwrap();
            assert_eq!(tail.first_index, n0 + 1);
            assert!(tail.xi.iter().all(|v| v.is_positive()));
            let diff = (tail.xi[0].clone() - freud.get(n0 + 1).unwrap().clone()).abs();
            assert!(diff.to_f64() < 1e-150, "n0 = {n0}: {diff:?}");
        }
        // and direct iteration of the map from (x_1, 0) agrees early on
        let mut s = PlaneState::new(freud.xi[0].clone(), zero.clone());
        for n in 1..20 {
            s = dp1_forward(&s, StepIndex(n), &params).unwrap();
            let d = (s.x.clone() - freud.get(n + 1).unwrap().clone()).abs();
            assert!(d.to_f64() < 1e-100, "n = {n}");
        }
    }

    #[test]
    fn ratio_approaches_inverse_sqrt3() {
        let params = Params::unit();
        let state = lq_solve(&0.0f64, 800, 400, &params).unwrap();
        let kappas = KappaSequence::new(1, 801, &params, &0.0f64).unwrap();
        let limit = theta_limit(&1.0f64);
        assert!((limit - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let r = lq_ratio_limit_check(&state, &kappas).unwrap();
        // xi_n / kappa_n = 1/sqrt(3) - 1/(6 sqrt(n)) + ..., about 1% low at n = 760
        assert!((r - limit).abs() / limit < 0.015);
        // monotone approach from below
        let mut prev = 0.0;
        for n in 50..=200 {
            let v = lq_ratio(&state, &kappas, n).unwrap();
            assert!(v > prev && v < limit);
            prev = v;
        }
    }

    proptest! {
        #[test]
        fn g_identities(tau in -50.0f64..50.0) {
            let g = g_of_tau(&tau);
            prop_assert!(g > 0.0);
            prop_assert!((g * g + 2.0 * tau * g - 1.0).abs() < 1e-9 * (1.0 + tau.abs()));
            prop_assert!((g * g_of_tau(&-tau) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn contraction_output_is_positive(vals in prop::collection::vec(0.0f64..20.0, 3..12), xi0 in 0.0f64..30.0) {
            let params = Params::unit();
            let m = vals.len();
            let kappas = KappaSequence::new(1, m + 1, &params, &0.0f64).unwrap();
            let state = LQState { first_index: 1, xi0, xi: vals };
            let out = lq_contract(&state, &kappas, &params).unwrap();
            prop_assert!(out.xi.iter().all(|v| *v > 0.0));
        }
    }
}
