use serde::{Deserialize, Serialize};

use crate::coords::{to_sfu, SfuState};
use crate::lewquarles::lq_solve;
use crate::maps::{dp1_forward, dp1_inverse, PlaneState, StepIndex};
use crate::numerics::{BigReal, Params, Real, Scalar};
use crate::{Error, Result};

/// Where an orbit's seed came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrbitSource {
    Freud,
    Lq { xi0: String },
    Polar { x1: String, y1: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSample<T> {
    pub n: i64,
    pub plane: PlaneState<T>,
    /// Absent when x = 0.
    pub sfu: Option<SfuState<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// A step that could not be taken: iteration in `direction` stopped at
/// sample `n` because the map is singular there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularEvent {
    pub n: i64,
    pub direction: Direction,
}

/// Samples over a contiguous range of n, ordered by n.
#[derive(Clone, Debug)]
pub struct Orbit<T> {
    pub params: Params,
    pub source: OrbitSource,
    /// Working precision of the samples, `None` for hardware or exact types.
    pub precision_bits: Option<u32>,
    pub samples: Vec<OrbitSample<T>>,
    pub events: Vec<SingularEvent>,
}

impl<T: Scalar> Orbit<T> {
    pub fn first_n(&self) -> i64 {
        self.samples.first().map_or(0, |s| s.n)
    }

    pub fn last_n(&self) -> i64 {
        self.samples.last().map_or(-1, |s| s.n)
    }

    pub fn get(&self, n: i64) -> Option<&OrbitSample<T>> {
        let k = n.checked_sub(self.first_n())?;
        usize::try_from(k).ok().and_then(|k| self.samples.get(k))
    }

    pub fn x(&self, n: i64) -> Option<&T> {
        self.get(n).map(|s| &s.plane.x)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn sample<T: Scalar>(plane: PlaneState<T>, n: i64, params: &Params) -> OrbitSample<T> {
    let sfu = to_sfu(&plane, StepIndex(n), params).ok();
    OrbitSample { n, plane, sfu }
}

/// Iterates `seed`, taken as the state at `n_start`, forward to `n_max` and
/// backward to `n_min`. A singular step ends that direction and is recorded
/// in `events`; the orbit is then partial.
///
/// At n = 0 the map has no 1/x term, so an orbit whose x reaches 0 exactly
/// at n = 0 (the Freud orbit) passes through.
pub fn iterate_orbit<T: Scalar>(
    seed: &PlaneState<T>,
    n_start: i64,
    n_min: i64,
    n_max: i64,
    params: &Params,
    source: OrbitSource,
    precision_bits: Option<u32>,
) -> Result<Orbit<T>> {
    if !(n_min <= n_start && n_start <= n_max) {
        return Err(Error::InvalidParams(format!(
            "need n_min <= n_start <= n_max, got {n_min}, {n_start}, {n_max}"
        )));
    }
    let mut events = Vec::new();
    let mut backward = Vec::new();
    let mut state = seed.clone();
    for n in (n_min..n_start).rev() {
        match dp1_inverse(&state, StepIndex(n), params) {
            Ok(prev) => {
                backward.push(sample(prev.clone(), n, params));
                state = prev;
            }
            Err(Error::SingularAxis { .. }) => {
                events.push(SingularEvent { n: n + 1, direction: Direction::Backward });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    backward.reverse();
    let mut samples = backward;
    samples.push(sample(seed.clone(), n_start, params));
    let mut state = seed.clone();
    for n in n_start..n_max {
        match dp1_forward(&state, StepIndex(n), params) {
            Ok(next) => {
                samples.push(sample(next.clone(), n + 1, params));
                state = next;
            }
            Err(Error::SingularAxis { .. }) => {
                events.push(SingularEvent { n, direction: Direction::Forward });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Orbit {
        params: params.clone(),
        source,
        precision_bits,
        samples,
        events,
    })
}

/// The Lew-Quarles seed (x_1, y_1) = (xi_1, xi_0) after `params.contraction_count`
/// sweeps on a section of length Nc + 1, at `params.precision_bits`.
pub fn lq_seed(xi0: &BigReal, params: &Params) -> Result<PlaneState<BigReal>> {
    let xi0 = xi0.with_precision(params.precision_bits);
    let nc = params.contraction_count;
    let state = lq_solve(&xi0, nc + 1, nc, params)?;
    Ok(PlaneState::new(state.xi[0].clone(), xi0))
}

/// Lew-Quarles orbit for `xi0` over [n_min, n_max]; xi0 = 0 gives the Freud orbit.
pub fn lq_orbit(xi0: &BigReal, n_min: i64, n_max: i64, params: &Params) -> Result<Orbit<BigReal>> {
    let seed = lq_seed(xi0, params)?;
    let source = if xi0.is_zero_value() {
        OrbitSource::Freud
    } else {
        OrbitSource::Lq { xi0: xi0.to_decimal_digits(30) }
    };
    iterate_orbit(&seed, 1, n_min.min(1), n_max.max(1), params, source, xi0.precision_bits())
        .map(|o| restrict(o, n_min, n_max))
}

pub fn freud_orbit(n_min: i64, n_max: i64, params: &Params) -> Result<Orbit<BigReal>> {
    lq_orbit(&params.zero_real(), n_min, n_max, params)
}

fn restrict<T: Scalar>(mut orbit: Orbit<T>, n_min: i64, n_max: i64) -> Orbit<T> {
    orbit.samples.retain(|s| s.n >= n_min && s.n <= n_max);
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{freud_residual, rational_state};
    use crate::Rational;

    #[test]
    fn trivial_range_returns_seed() {
        let seed = rational_state((1, 2), (3, 1));
        let o = iterate_orbit(&seed, 4, 4, 4, &Params::unit(), OrbitSource::Freud, None).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o.get(4).unwrap().plane, seed);
        assert!(o.events.is_empty());
    }

    #[test]
    fn rejects_bad_range() {
        let seed = rational_state((1, 1), (1, 1));
        assert!(iterate_orbit(&seed, 0, 1, 3, &Params::unit(), OrbitSource::Freud, None).is_err());
    }

    #[test]
    fn exact_orbit_satisfies_recurrence_and_sfu() {
        let p = Params::unit();
        let seed = rational_state((2, 3), (5, 7));
        let o = iterate_orbit(&seed, 2, -2, 5, &p, OrbitSource::Freud, None).unwrap();
        assert_eq!((o.first_n(), o.last_n()), (-2, 5));
        for n in -1..5 {
            let r = freud_residual(o.x(n - 1).unwrap(), o.x(n).unwrap(), o.x(n + 1).unwrap(), StepIndex(n), &p);
            assert_eq!(r, Rational::from_integer(0.into()), "n = {n}");
            assert_eq!(o.get(n).unwrap().plane.y, o.x(n - 1).unwrap().clone());
        }
        for s in &o.samples {
            if let Some(sfu) = &s.sfu {
                assert_eq!(sfu, &to_sfu(&s.plane, StepIndex(s.n), &p).unwrap());
            }
        }
    }

    #[test]
    fn singular_step_is_recorded_not_thrown() {
        let p = Params::unit();
        // x_2 = 1/(1) - 1 - 1 - (-1) = 0 at n = 1, so the step at n = 2 is singular
        let seed = rational_state((1, 1), (-1, 1));
        let o = iterate_orbit(&seed, 1, 1, 10, &p, OrbitSource::Polar { x1: "1".into(), y1: "-1".into() }, None)
            .unwrap();
        assert_eq!(o.last_n(), 2);
        assert!(o.get(2).unwrap().sfu.is_none());
        assert_eq!(o.events, vec![SingularEvent { n: 2, direction: Direction::Forward }]);
    }

    #[test]
    fn freud_orbit_passes_through_zero() {
        let p = Params::with_settings(Rational::from_integer(1.into()), Rational::from_integer(1.into()), 256, 60)
            .unwrap();
        let o = freud_orbit(-6, 12, &p).unwrap();
        assert_eq!((o.first_n(), o.last_n()), (-6, 12));
        assert!(o.x(0).unwrap().is_zero_value());
        assert!(o.get(0).unwrap().sfu.is_none());
        assert!(o.events.is_empty());
        for n in 1..=12 {
            assert!(o.x(n).unwrap().is_positive());
        }
        assert_eq!(o.source, OrbitSource::Freud);
    }
}
