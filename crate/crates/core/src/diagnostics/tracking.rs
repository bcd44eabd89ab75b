use serde::{Deserialize, Serialize};

use super::orbit::Orbit;
use crate::maps::{alpha_fixed_point, period2_values, AutonomousParams, PlaneState};
use crate::numerics::Real;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrackSide {
    /// n >= 1 against the fixed points (omega, omega) of alpha-dP1.
    Forward,
    /// n <= -1 against the period-2 points of alpha-dP1.
    Backward,
}

/// The alpha-dP1 point tracked at step n, alpha = n/N: (omega, omega) for
/// n >= 1; for n <= -1, (Omega_+, Omega_-) when n is even and
/// (Omega_-, Omega_+) when n is odd.
pub fn alpha_target<T: Real>(n: i64, orbit: &Orbit<T>, like: &T) -> Result<PlaneState<T>> {
    let ap = AutonomousParams::frozen(n, &orbit.params, like);
    if n >= 1 {
        return alpha_fixed_point(&ap);
    }
    let (plus, minus) = period2_values(&ap.alpha, &ap.r)?;
    Ok(if n % 2 == 0 {
        PlaneState::new(plus, minus)
    } else {
        PlaneState::new(minus, plus)
    })
}

/// d_n (forward) or D_n (backward): Euclidean distance from the orbit to the
/// tracked alpha-dP1 point, at every sample on the requested side.
pub fn track_alpha_points<T: Real>(orbit: &Orbit<T>, side: TrackSide) -> Result<Vec<(i64, T)>> {
    let mut out = Vec::new();
    for s in &orbit.samples {
        let on_side = match side {
            TrackSide::Forward => s.n >= 1,
            TrackSide::Backward => s.n <= -1,
        };
        if !on_side {
            continue;
        }
        let target = alpha_target(s.n, orbit, &s.plane.x)?;
        let dx = s.plane.x.clone() - target.x;
        let dy = s.plane.y.clone() - target.y;
        out.push((s.n, (dx.clone() * dx + dy.clone() * dy).sqrt()));
    }
    Ok(out)
}
