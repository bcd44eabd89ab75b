use std::cmp::Ordering;

use super::orbit::Orbit;
use crate::numerics::Real;
use crate::{Error, Result};

/// Natural log of a Euclidean distance; identical points give `Exact`
/// (log 0 = -inf) instead of a non-finite number.
#[derive(Clone, Debug, PartialEq)]
pub enum LogDistance<T> {
    Exact,
    Value(T),
}

impl<T: Real> LogDistance<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            LogDistance::Exact => None,
            LogDistance::Value(v) => Some(v),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.value().map_or(f64::NEG_INFINITY, |v| v.to_f64())
    }

    fn cmp_total(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogDistance::Exact, LogDistance::Exact) => Ordering::Equal,
            (LogDistance::Exact, _) => Ordering::Less,
            (_, LogDistance::Exact) => Ordering::Greater,
            (LogDistance::Value(a), LogDistance::Value(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        }
    }
}

pub(crate) fn log_norm<T: Real>(dx: T, dy: T) -> LogDistance<T> {
    let sq = dx.clone() * dx + dy.clone() * dy;
    if sq.is_zero_value() {
        LogDistance::Exact
    } else {
        // log sqrt(q) = log(q)/2
        let half = T::lift_int(2, &sq);
        LogDistance::Value(sq.ln() / half)
    }
}

/// delta_n = log ||A_n - B_n|| in (x, y) over the common range of n.
pub fn log_distance<T: Real>(a: &Orbit<T>, b: &Orbit<T>) -> Result<Vec<(i64, LogDistance<T>)>> {
    let lo = a.first_n().max(b.first_n());
    let hi = a.last_n().min(b.last_n());
    if lo > hi || a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParams("orbits have no common n".into()));
    }
    Ok((lo..=hi)
        .map(|n| {
            let (pa, pb) = (&a.get(n).expect("in range").plane, &b.get(n).expect("in range").plane);
            (n, log_norm(pa.x.clone() - pb.x.clone(), pa.y.clone() - pb.y.clone()))
        })
        .collect())
}

/// slope_n = delta_{n+1} - delta_n, for consecutive n where both are finite.
pub fn secant_slope<T: Real>(series: &[(i64, LogDistance<T>)]) -> Result<Vec<(i64, T)>> {
    if series.len() < 2 {
        return Err(Error::InvalidParams("secant slope needs at least two points".into()));
    }
    Ok(series
        .windows(2)
        .filter(|w| w[1].0 == w[0].0 + 1)
        .filter_map(|w| match (&w[0].1, &w[1].1) {
            (LogDistance::Value(a), LogDistance::Value(b)) => Some((w[0].0, b.clone() - a.clone())),
            _ => None,
        })
        .collect())
}

/// The n of the global minimum of delta_n (first occurrence). The minimum
/// must be interior: at neither end of the series.
pub fn turnaround_index<T: Real>(series: &[(i64, LogDistance<T>)]) -> Result<i64> {
    let mut best = 0;
    for (k, (_, v)) in series.iter().enumerate().skip(1) {
        if v.cmp_total(&series[best].1) == Ordering::Less {
            best = k;
        }
    }
    if series.len() < 3 || best == 0 || best == series.len() - 1 {
        return Err(Error::NoInteriorMinimum);
    }
    Ok(series[best].0)
}
