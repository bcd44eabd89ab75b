//! Asymptotic expansions of u_n along the invariant curves, and of the
//! Freud orbit x_n.
//!
//! On an orbit, alpha_n = n/N reads s + f = gamma n u^2 - u + 1, and on the
//! invariant curve s + f = h(u). With eps = (gamma |n|)^{-1/2}, u = eps v and
//! sigma = sign(n) this becomes
//!
//! ```text
//! sigma v^2 - eps v + 1 - sum_k h_k eps^k v^k = 0,
//! ```
//!
//! solved for v as a power series in eps. The leading term is v_0 = pm sqrt(d)
//! with d = |h_0 - 1| (3 at P_inf, 1 at P_minf), and every later term follows
//! linearly from v_j = -[F]_j / (2 sigma v_0).

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::invariant::{invariant_curve, Side};
use super::quad::QuadGamma;
use crate::numerics::{format_rational, GammaPoly, Params, Rational, Real};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    /// Branch followed by orbits approaching P_minf as n -> -inf: x_n > 0
    /// (so u_n < 0) for even n, x_n < 0 for odd n.
    pub fn backward_parity(n: i64) -> Self {
        if n % 2 == 0 {
            Branch::Minus
        } else {
            Branch::Plus
        }
    }
}

/// u = sum_{k >= 1} c_k(gamma) sqrt(d)^{k mod 2} (gamma |n|)^{-k/2}.
///
/// The gauge (gamma |n|)^{-1/2} keeps every coefficient polynomial in gamma.
/// Odd k carry the factor sqrt(d) and change sign with the branch.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfPowerSeries {
    pub side: Side,
    pub branch: Branch,
    /// Radicand d of the leading coefficient.
    pub radicand: Rational,
    /// Sign of n on which the expansion lives: +1 at P_inf, -1 at P_minf.
    pub n_sign: i64,
    /// `coeffs[k - 1]` is c_k.
    coeffs: Vec<GammaPoly>,
}

impl HalfPowerSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// c_k and whether it carries sqrt(d).
    pub fn term(&self, k: usize) -> (GammaPoly, bool) {
        (self.coeffs.get(k.wrapping_sub(1)).cloned().unwrap_or_default(), k % 2 == 1)
    }

    pub fn coefficients(&self) -> &[GammaPoly] {
        &self.coeffs
    }

    /// The other branch: odd-k terms negated.
    pub fn flip_branch(&self) -> Self {
        let mut out = self.clone();
        out.branch = self.branch.flipped();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if (i + 1) % 2 == 1 {
                *c = -&*c;
            }
        }
        out
    }

    /// The first `order` terms.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(order);
        out
    }

    /// Value at step n for the given gamma, in the scalar type of `gamma`.
    pub fn eval<T: Real>(&self, n: i64, gamma: &T) -> Result<T> {
        if n == 0 || n.signum() != self.n_sign {
            return Err(Error::InvalidParams(format!(
                "{} expansion needs sign(n) = {}, got n = {n}",
                self.side.name(),
                self.n_sign
            )));
        }
        let abs_n = T::lift_int(n.abs(), gamma);
        let eps = (T::lift_int(1, gamma) / (gamma.clone() * abs_n)).sqrt();
        let root_d = T::lift(&self.radicand, gamma).sqrt();
        let mut power = eps.clone();
        let mut acc = T::lift_int(0, gamma);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut term = c.eval_scalar(gamma) * power.clone();
            if (i + 1) % 2 == 1 {
                term = term * root_d.clone();
            }
            acc = acc + term;
            power = power * eps.clone();
        }
        Ok(acc)
    }

    pub fn to_records(&self) -> Vec<HalfPowerTerm> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| HalfPowerTerm {
                half_power: i + 1,
                sqrt_radicand: (i + 1) % 2 == 1,
                gamma_poly_coeffs: c.coeffs().iter().map(format_rational).collect(),
            })
            .collect()
    }
}

/// JSON entry for one term c_k sqrt(d)^{k mod 2} (gamma |n|)^{-k/2}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPowerTerm {
    pub half_power: usize,
    pub sqrt_radicand: bool,
    pub gamma_poly_coeffs: Vec<String>,
}

impl fmt::Display for HalfPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = format_rational(&self.radicand);
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            let k = i + 1;
            let root = if k % 2 == 1 { format!("*sqrt({d})") } else { String::new() };
            write!(f, "({c}){root}*(g|n|)^(-{k}/2)")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Term-by-term reversion of s + f = gamma n u^2 - u + 1 along the invariant
/// curve at `side`, keeping `order` terms.
pub fn u_asymptotic(side: Side, branch: Branch, order: usize) -> Result<HalfPowerSeries> {
    if order < 1 {
        return Err(Error::InvalidParams("u expansion order must be >= 1".into()));
    }
    let (s, f) = invariant_curve(side, order.max(2))?;
    let h: Vec<GammaPoly> = (0..order).map(|k| &s.coeff(k) + &f.coeff(k)).collect();
    let h0 = h[0].as_constant().ok_or_else(|| Error::Unsolvable {
        degree: 0,
        reason: "constant term of s + f depends on gamma".into(),
    })?;
    let shifted = &h0 - Rational::from_integer(1.into());
    if shifted.is_zero() {
        return Err(Error::Unsolvable {
            degree: 0,
            reason: "degenerate leading balance".into(),
        });
    }
    let sigma: i64 = if shifted > Rational::zero() { 1 } else { -1 };
    let d = if sigma > 0 { shifted } else { -shifted };
    let sigma_q = Rational::from_integer(sigma.into());
    let one = GammaPoly::from_ints(&[1]);

    // v_0 = branch * sqrt(d)
    let mut v = vec![QuadGamma::surd(&d, GammaPoly::from_ints(&[branch.sign()]))];
    for j in 1..order {
        // F_j with v_j = 0
        let mut fj = QuadGamma::zero(&d);
        for i in 1..j {
            fj = &fj + &(&v[i] * &v[j - i]).scale(&sigma_q);
        }
        fj = &fj - &v[j - 1];
        // - sum_k h_k [v^k]_{j-k}
        let mut power = vec![QuadGamma::rational(&d, one.clone())]; // v^0
        for (k, hk) in h.iter().enumerate().take(j + 1).skip(1) {
            let prev = power.clone();
            power = (0..=j).map(|m| convolve(&prev, &v, m, &d)).collect();
            fj = &fj - &power[j - k].mul_poly(hk);
        }
        let vj = (-&fj).div_surd(&(Rational::from_integer((2 * sigma * branch.sign()).into())));
        v.push(vj);
    }

    let mut coeffs = Vec::with_capacity(order);
    for (j, vj) in v.iter().enumerate() {
        let k = j + 1;
        let (part, other) = if k % 2 == 1 { (&vj.b, &vj.a) } else { (&vj.a, &vj.b) };
        if !other.is_zero() {
            return Err(Error::Unsolvable {
                degree: k,
                reason: "coefficient breaks the sqrt(d) parity pattern".into(),
            });
        }
        coeffs.push(part.clone());
    }
    Ok(HalfPowerSeries {
        side,
        branch,
        radicand: d,
        n_sign: sigma,
        coeffs,
    })
}

/// [a * b]_m for coefficient lists, treating missing entries as zero.
fn convolve(a: &[QuadGamma], b: &[QuadGamma], m: usize, d: &Rational) -> QuadGamma {
    let mut acc = QuadGamma::zero(d);
    for i in 0..=m {
        if let (Some(x), Some(y)) = (a.get(i), b.get(m - i)) {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// sqrt(n/(3 r N)) - 1/(6 r) + (sqrt(12)/144) sqrt(N/n) r^{-3/2}.
pub fn x_asymptotic<T: Real>(n: i64, params: &Params, like: &T) -> Result<T> {
    if n < 1 {
        return Err(Error::InvalidParams(format!("x expansion needs n >= 1, got {n}")));
    }
    let r = T::lift(params.r(), like);
    let big_n = T::lift(params.n_scale(), like);
    let nn = T::lift_int(n, like);
    let three = T::lift_int(3, like);
    let lead = (nn.clone() / (three * r.clone() * big_n.clone())).sqrt();
    let second = T::lift_int(1, like) / (T::lift_int(6, like) * r.clone());
    let third = T::lift_int(12, like).sqrt() / T::lift_int(144, like) * (big_n / nn).sqrt()
        / (r.clone() * r.clone() * r).sqrt();
    Ok(lead - second + third)
}
