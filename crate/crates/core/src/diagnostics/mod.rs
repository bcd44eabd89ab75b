//! Orbit iteration and the measured quantities built on it: log-distances
//! between orbits, secant slopes and turnaround, distances to the alpha-dP1
//! fixed and period-2 points, polar/non-polar classification, and export.

mod classify;
mod distance;
pub mod export;
mod orbit;
mod tracking;

pub use classify::{classify_orbit, ClassificationReport, OrbitClass, CONFINEMENT_CONTRAST};
pub use distance::{log_distance, secant_slope, turnaround_index, LogDistance};
pub use orbit::{
    freud_orbit, iterate_orbit, lq_orbit, lq_seed, Direction, Orbit, OrbitSample, OrbitSource, SingularEvent,
};
pub use tracking::{alpha_target, track_alpha_points, TrackSide};
