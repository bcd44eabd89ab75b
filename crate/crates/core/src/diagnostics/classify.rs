use serde::{Deserialize, Serialize};

use super::orbit::{Direction, Orbit};
use crate::numerics::Real;

/// Ratio by which |x| must jump into, and fall out of, a pole excursion for
/// the excursion to count as a confinement event.
pub const CONFINEMENT_CONTRAST: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitClass {
    Polar,
    NonPolarSoFar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub class: OrbitClass,
    /// Last n examined.
    pub window_end: i64,
    /// First n >= 1 with x_n <= 0.
    pub first_exit: Option<i64>,
    /// Steps k at which x_k is small, x_{k+1} and x_{k+2} are large with
    /// opposite signs, and x_{k+3} is small again.
    pub confinement_starts: Vec<i64>,
    pub singular_steps: usize,
}

impl ClassificationReport {
    pub fn confinement_events(&self) -> usize {
        self.confinement_starts.len()
    }
}

/// Classifies the forward part n in [1, window] of `orbit`.
///
/// The orbit is polar when some x_n <= 0 there or a forward step was
/// singular, and non-polar-so-far otherwise.
pub fn classify_orbit<T: Real>(orbit: &Orbit<T>, window: i64) -> ClassificationReport {
    let end = orbit.last_n().min(window);
    let xs: Vec<(i64, f64)> = orbit
        .samples
        .iter()
        .filter(|s| s.n >= 1 && s.n <= end)
        .map(|s| (s.n, s.plane.x.to_f64()))
        .collect();
    let first_exit = xs.iter().find(|(_, x)| *x <= 0.0).map(|(n, _)| *n);
    let singular_steps = orbit
        .events
        .iter()
        .filter(|e| e.direction == Direction::Forward && e.n >= 1 && e.n <= end)
        .count();

    let mut confinement_starts = Vec::new();
    let mut k = 0;
    while k + 3 < xs.len() {
        let [a, b, c, d] = [xs[k].1, xs[k + 1].1, xs[k + 2].1, xs[k + 3].1];
        if b * c < 0.0 && b.abs() > CONFINEMENT_CONTRAST * a.abs() && c.abs() > CONFINEMENT_CONTRAST * d.abs() {
            confinement_starts.push(xs[k].0);
            k += 3;
        } else {
            k += 1;
        }
    }
    let class = if first_exit.is_some() || singular_steps > 0 {
        OrbitClass::Polar
    } else {
        OrbitClass::NonPolarSoFar
    };
    ClassificationReport {
        class,
        window_end: end,
        first_exit,
        confinement_starts,
        singular_steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::orbit::{iterate_orbit, OrbitSource};
    use crate::maps::PlaneState;
    use crate::numerics::{BigReal, Params};

    #[test]
    fn positive_constant_orbit_is_non_polar() {
        let mut o = iterate_orbit(&PlaneState::new(2.0f64, 2.0), 1, 1, 1, &Params::unit(), OrbitSource::Freud, None)
            .unwrap();
        o.samples = (1..=40)
            .map(|n| crate::diagnostics::OrbitSample { n, plane: PlaneState::new(2.0, 2.0), sfu: None })
            .collect();
        let rep = classify_orbit(&o, 100);
        assert_eq!(rep.class, OrbitClass::NonPolarSoFar);
        assert_eq!(rep.window_end, 40);
        assert_eq!(rep.confinement_events(), 0);
    }

    #[test]
    fn generic_seed_is_polar_with_confinement() {
        let p = Params::unit();
        let seed = PlaneState::new(BigReal::parse("1.7", 512).unwrap(), BigReal::parse("-3.1", 512).unwrap());
        let src = OrbitSource::Polar { x1: "1.7".into(), y1: "-3.1".into() };
        let o = iterate_orbit(&seed, 1, 1, 120, &p, src, Some(512)).unwrap();
        let rep = classify_orbit(&o, 120);
        assert_eq!(rep.class, OrbitClass::Polar);
        assert_eq!(rep.first_exit, Some(3));
        assert!(rep.confinement_events() >= 1, "{rep:?}");
        // the excursion that starts from x_9 ~ 0.14
        assert!(rep.confinement_starts.contains(&9), "{rep:?}");
    }

    #[test]
    fn classification_is_deterministic() {
        let p = Params::unit();
        let seed = PlaneState::new(51.0f64, 83.0);
        let src = OrbitSource::Polar { x1: "51".into(), y1: "83".into() };
        let o = iterate_orbit(&seed, 1, 1, 60, &p, src, None).unwrap();
        let a = classify_orbit(&o, 60);
        assert_eq!(a, classify_orbit(&o, 60));
        assert_eq!(a.class, OrbitClass::Polar);
    }
}
