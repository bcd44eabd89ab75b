use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rational, Rational, Scalar};

/// Dense polynomial in gamma = r/N with exact rational coefficients.
/// `coeffs[k]` multiplies gamma^k; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GammaPoly {
    coeffs: Vec<Rational>,
}

impl GammaPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = GammaPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// The monomial gamma.
    pub fn gamma() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The constant value when the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn eval(&self, gamma: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * gamma + c)
    }

    /// Horner evaluation in any scalar type.
    pub fn eval_scalar<T: Scalar>(&self, gamma: &T) -> T {
        let mut acc = T::lift_int(0, gamma);
        for c in self.coeffs.iter().rev() {
            acc = acc * gamma.clone() + T::lift(c, gamma);
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

/// Exact value of `p` at a rational gamma.
pub fn eval_gamma_poly(p: &GammaPoly, gamma: &Rational) -> Rational {
    p.eval(gamma)
}

impl<'a> Add<&'a GammaPoly> for &'a GammaPoly {
    type Output = GammaPoly;
    fn add(self, rhs: &'a GammaPoly) -> GammaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GammaPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a GammaPoly> for &'a GammaPoly {
    type Output = GammaPoly;
    fn sub(self, rhs: &'a GammaPoly) -> GammaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GammaPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a GammaPoly> for &'a GammaPoly {
    type Output = GammaPoly;
    fn mul(self, rhs: &'a GammaPoly) -> GammaPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return GammaPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        GammaPoly::new(out)
    }
}

impl Neg for &GammaPoly {
    type Output = GammaPoly;
    fn neg(self) -> GammaPoly {
        GammaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GammaPoly {
            type Output = GammaPoly;
            fn $method(self, rhs: GammaPoly) -> GammaPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for GammaPoly {
    type Output = GammaPoly;
    fn neg(self) -> GammaPoly {
        -&self
    }
}

impl Zero for GammaPoly {
    fn zero() -> Self {
        GammaPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for GammaPoly {
    fn one() -> Self {
        GammaPoly::from_ints(&[1])
    }
}

/// Human-readable form, e.g. `-1/512*g - 21/128*g^2`.
impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag_str = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format_rational(&mag)
            };
            let term = match k {
                0 => mag_str,
                1 if mag.is_one() => "g".to_string(),
                1 => format!("{mag_str}*g"),
                _ if mag.is_one() => format!("g^{k}"),
                _ => format!("{mag_str}*g^{k}"),
            };
            write!(f, "{sep}{term}")?;
            first = false;
        }
        Ok(())
    }
}
