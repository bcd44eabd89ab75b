//! Moments of the quartic weight w(lambda) = exp(-N (lambda^2/2 + r lambda^4/4))
//! and the Freud initial data b_1^2, b_2^2.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::numerics::{BigReal, Params, Rational, Real};
use crate::{Error, Result};

/// Extra bits carried through the quadrature sums.
const GUARD_BITS: u32 = 32;
const MAX_LEVELS: usize = 24;

/// Even moments mu_0, mu_2, ... up to `max_index`. mu_0 and mu_2 come from
/// quadrature, the rest from (i + 1) mu_i = N (mu_{i+2} + r mu_{i+4}).
/// The quadrature value of mu_4 is kept as an independent check.
#[derive(Clone, Debug)]
pub struct MomentTable {
    pub r: Rational,
    pub n_scale: Rational,
    pub precision: u32,
    /// Number of step-halvings the quadrature needed.
    pub levels: usize,
    mu: BTreeMap<usize, BigReal>,
    quadrature: BTreeMap<usize, BigReal>,
}

impl MomentTable {
    pub fn max_index(&self) -> usize {
        *self.mu.keys().next_back().expect("table is never empty")
    }

    /// mu_i; odd moments vanish by symmetry.
    pub fn get(&self, i: usize) -> Option<BigReal> {
        if i % 2 == 1 {
            return (i <= self.max_index()).then(|| BigReal::zero(self.precision));
        }
        self.mu.get(&i).cloned()
    }

    /// The quadrature value of mu_i for i in {0, 2, 4}.
    pub fn quadrature(&self, i: usize) -> Option<&BigReal> {
        self.quadrature.get(&i)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &BigReal)> {
        self.mu.iter().map(|(k, v)| (*k, v))
    }

    /// (i + 1) mu_i - N (mu_{i+2} + r mu_{i+4}).
    pub fn recurrence_residual(&self, i: usize) -> Option<BigReal> {
        let p = self.precision;
        let (a, b, c) = (self.get(i)?, self.get(i + 2)?, self.get(i + 4)?);
        let n = BigReal::from_rational(&self.n_scale, p);
        let r = BigReal::from_rational(&self.r, p);
        Some(BigReal::from_i64(i as i64 + 1, p) * a - n * (b + r * c))
    }

    /// mu_4 from the recurrence minus mu_4 from quadrature.
    pub fn mu4_crosscheck(&self) -> BigReal {
        self.get(4).expect("mu_4 present") - self.quadrature[&4].clone()
    }
}

/// Half-width L beyond which lambda^i w(lambda) < 10^-(digits + 10).
fn tail_cutoff(i_max: usize, digits: f64, params: &Params) -> f64 {
    let n = num_traits::ToPrimitive::to_f64(params.n_scale()).unwrap_or(1.0);
    let r = num_traits::ToPrimitive::to_f64(params.r()).unwrap_or(1.0);
    let target = (digits + 10.0) * std::f64::consts::LN_10;
    let log_tail = |l: f64| -n * (l * l / 2.0 + r * l.powi(4) / 4.0) + i_max as f64 * l.ln();
    let mut hi = 1.0f64;
    while log_tail(hi) > -target {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if log_tail(mid) > -target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Trapezoid sums of lambda^i w over the full line for each even i in
/// `indices`, halving the step until two successive levels agree to
/// `precision` bits. The integrand is entire and decays faster than any
/// Gaussian, so the error falls exponentially in 1/h.
fn trapezoid_moments(indices: &[usize], params: &Params, precision: u32) -> Result<(Vec<BigReal>, usize)> {
    let wp = precision + GUARD_BITS;
    let i_max = indices.iter().copied().max().unwrap_or(0);
    let digits = precision as f64 * std::f64::consts::LOG10_2;
    let cutoff = tail_cutoff(i_max, digits, params);
    let n = BigReal::from_rational(params.n_scale(), wp);
    let r = BigReal::from_rational(params.r(), wp);
    let half = BigReal::parse("0.5", wp)?;
    let quarter = BigReal::parse("0.25", wp)?;
    let weight = |lambda: &BigReal| -> BigReal {
        let l2 = lambda.clone() * lambda.clone();
        let expo = n.clone() * (half.clone() * l2.clone() + quarter.clone() * r.clone() * l2.clone() * l2);
        (-expo).exp()
    };
    let node_sums = |nodes: Vec<BigReal>| -> Vec<BigReal> {
        let parts: Vec<Vec<BigReal>> = nodes
            .par_iter()
            .map(|lambda| {
                let w = weight(lambda);
                let l2 = lambda.clone() * lambda.clone();
                let mut out = Vec::with_capacity(indices.len());
                for &i in indices {
                    let mut term = w.clone();
                    for _ in 0..i / 2 {
                        term = term * l2.clone();
                    }
                    out.push(term);
                }
                out
            })
            .collect();
        let mut acc = vec![BigReal::zero(wp); indices.len()];
        for row in parts {
            for (a, v) in acc.iter_mut().zip(row) {
                *a = a.clone() + v;
            }
        }
        acc
    };

    // level 0: h = 1/4
    let mut h = Rational::new(1.into(), 4.into());
    let mut count = (cutoff / 0.25).ceil() as i64;
    let node = |k: i64, h: &Rational| BigReal::from_rational(&(h * Rational::from_integer(k.into())), wp);
    let mut sums = node_sums((1..=count).map(|k| node(k, &h)).collect());
    let w0 = weight(&BigReal::zero(wp));
    let estimate = |sums: &[BigReal], h: &Rational| -> Vec<BigReal> {
        let hb = BigReal::from_rational(h, wp);
        indices
            .iter()
            .zip(sums)
            .map(|(&i, s)| {
                let centre = if i == 0 { w0.clone() } else { BigReal::zero(wp) };
                hb.clone() * (centre + BigReal::from_i64(2, wp) * s.clone())
            })
            .collect()
    };
    let mut prev = estimate(&sums, &h);
    let tol = BigReal::exp2(-(precision as i32), wp);
    for level in 1..=MAX_LEVELS {
        h = h / Rational::from_integer(2.into());
        count *= 2;
        let fresh = node_sums((0..count / 2).map(|j| node(2 * j + 1, &h)).collect());
        for (s, f) in sums.iter_mut().zip(fresh) {
            *s = s.clone() + f;
        }
        let cur = estimate(&sums, &h);
        let converged = cur
            .iter()
            .zip(&prev)
            .all(|(a, b)| (a.clone() - b.clone()).abs() <= tol.clone() * a.abs());
        if converged {
            return Ok((cur.into_iter().map(|v| v.with_precision(precision)).collect(), level));
        }
        prev = cur;
    }
    Err(Error::QuadratureNonConvergence {
        index: i_max,
        levels: MAX_LEVELS,
    })
}

/// mu_i by quadrature alone.
pub fn quadrature_moment(i: usize, params: &Params, precision: u32) -> Result<BigReal> {
    if i % 2 == 1 {
        return Ok(BigReal::zero(precision));
    }
    Ok(trapezoid_moments(&[i], params, precision)?.0.remove(0))
}

pub fn moments(max_even_index: usize, params: &Params, precision: u32) -> Result<MomentTable> {
    if max_even_index < 4 {
        return Err(Error::InvalidParams(format!(
            "moment table needs max index >= 4, got {max_even_index}"
        )));
    }
    let (quad, levels) = trapezoid_moments(&[0, 2, 4], params, precision)?;
    let mut mu = BTreeMap::new();
    mu.insert(0, quad[0].clone());
    mu.insert(2, quad[1].clone());
    let n = BigReal::from_rational(params.n_scale(), precision);
    let r = BigReal::from_rational(params.r(), precision);
    let mut i = 0;
    while i + 4 <= max_even_index {
        let next = (BigReal::from_i64(i as i64 + 1, precision) * mu[&i].clone() / n.clone() - mu[&(i + 2)].clone())
            / r.clone();
        mu.insert(i + 4, next);
        i += 2;
    }
    let quadrature = [(0, quad[0].clone()), (2, quad[1].clone()), (4, quad[2].clone())].into_iter().collect();
    Ok(MomentTable {
        r: params.r().clone(),
        n_scale: params.n_scale().clone(),
        precision,
        levels,
        mu,
        quadrature,
    })
}

/// b_1^2 = mu_2/mu_0 and b_2^2 = (mu_4 mu_0 - mu_2^2)/(mu_0 mu_2).
pub fn freud_init_from_moments(table: &MomentTable) -> Result<(BigReal, BigReal)> {
    let missing = || Error::InvalidParams("moment table lacks mu_4".into());
    let mu0 = table.get(0).ok_or_else(missing)?;
    let mu2 = table.get(2).ok_or_else(missing)?;
    let mu4 = table.get(4).ok_or_else(missing)?;
    let b1sq = mu2.clone() / mu0.clone();
    let b2sq = (mu4 * mu0.clone() - mu2.clone() * mu2.clone()) / (mu0 * mu2);
    Ok((b1sq, b2sq))
}
