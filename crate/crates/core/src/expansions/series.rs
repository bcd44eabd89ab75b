use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::numerics::{format_rational, parse_rational, GammaPoly, Rational, Scalar};
use crate::{Error, Result};

/// Coefficient ring for truncated series: exact rationals, or polynomials in
/// gamma with rational coefficients.
pub trait Coefficient:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_rational(q: Rational) -> Self;

    /// The value when it is a rational constant.
    fn as_rational(&self) -> Option<Rational>;
}

impl Coefficient for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Coefficient for GammaPoly {
    fn from_rational(q: Rational) -> Self {
        GammaPoly::constant(q)
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
}

/// Power series in u truncated at degree `order` (coefficients of u^0 ..= u^order).
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Series with coefficients polynomial in gamma.
pub type USeries = Series<GammaPoly>;

impl<C: Coefficient> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    /// The series u.
    pub fn variable(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut out = Self::zero(order);
        if k <= order {
            out.coeffs[k] = c;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        if k <= self.order() {
            self.coeffs[k] = c;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// self(inner); `inner` must have zero constant term. Horner in series
    /// arithmetic at the smaller of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::InvalidParams("composition needs an inner series without constant term".into()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeff(order), order);
        for k in (0..order).rev() {
            acc = &(&acc * &inner) + &Self::constant(self.coeff(k), order);
        }
        Ok(acc)
    }

    /// 1/self; the constant term must be a nonzero rational.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self
            .coeff(0)
            .as_rational()
            .filter(|q| !q.is_zero())
            .ok_or(Error::SingularStep("constant term of the series"))?;
        let inv0 = C::from_rational(c0.recip());
        let order = self.order();
        let mut out = Self::zero(order);
        out.coeffs[0] = inv0.clone();
        for k in 1..=order {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out.coeffs[k - j].clone();
            }
            out.coeffs[k] = -(acc * inv0.clone());
        }
        Ok(out)
    }

    /// Horner evaluation at `u`, mapping coefficients through `coef`.
    pub fn eval_with<T: Scalar>(&self, u: &T, coef: impl Fn(&C) -> T) -> T {
        let mut acc = coef(&self.coeffs[self.order()]);
        for c in self.coeffs[..self.order()].iter().rev() {
            acc = acc * u.clone() + coef(c);
        }
        acc
    }
}

impl<'a, C: Coefficient> Add for &'a Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &'a Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order).map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone()).collect(),
        }
    }
}

impl<'a, C: Coefficient> Sub for &'a Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &'a Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order).map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone()).collect(),
        }
    }
}

impl<'a, C: Coefficient> Mul for &'a Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &'a Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        let mut out: Series<C> = Series::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        out
    }
}

impl<C: Coefficient> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl USeries {
    /// Exact specialization at a rational gamma.
    pub fn at_gamma(&self, gamma: &Rational) -> Series<Rational> {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.eval(gamma)).collect(),
        }
    }

    pub fn eval_real<T: Scalar>(&self, u: &T, gamma: &T) -> T {
        self.eval_with(u, |c| c.eval_scalar(gamma))
    }

    pub fn to_records(&self) -> Vec<SeriesTerm> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(power, c)| SeriesTerm {
                power,
                gamma_poly_coeffs: c.coeffs().iter().map(format_rational).collect(),
            })
            .collect()
    }

    pub fn from_records(records: &[SeriesTerm]) -> Result<Self> {
        let order = records.iter().map(|t| t.power).max().unwrap_or(0);
        let mut out = Self::zero(order);
        for t in records {
            let coeffs = t
                .gamma_poly_coeffs
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            out.coeffs[t.power] = GammaPoly::new(coeffs);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_records()).expect("series records serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let records: Vec<SeriesTerm> = serde_json::from_value(value.clone())?;
        Self::from_records(&records)
    }
}

impl Series<Rational> {
    pub fn eval_real<T: Scalar>(&self, u: &T) -> T {
        self.eval_with(u, |c| T::lift(c, u))
    }
}

/// One JSON entry: the u^power coefficient as rational coefficients of
/// gamma^0, gamma^1, ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub power: usize,
    pub gamma_poly_coeffs: Vec<String>,
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{k}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(u^{})", self.order() + 1)
    }
}
