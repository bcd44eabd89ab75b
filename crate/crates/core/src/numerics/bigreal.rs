use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use rug::ops::CompleteRound;
use rug::Float;

use super::rational::to_rug_rational;
use super::{Rational, Real, Scalar};
use crate::{Error, Result};

/// Arbitrary-precision binary float with a per-value precision in bits.
///
/// Binary operations round (to nearest) at the smaller of the two operand
/// precisions; use [`BigReal::with_precision`] to raise a value explicitly.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigReal(Float);

/// Bits needed to carry `digits` significant decimal digits: `ceil(digits * log2 10)`.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

/// Decimal digits that round-trip a value of `bits` precision.
pub fn digits_for_bits(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
}

impl BigReal {
    pub fn from_rational(q: &Rational, precision: u32) -> Self {
        BigReal(Float::with_val(precision, to_rug_rational(q)))
    }

    pub fn from_i64(v: i64, precision: u32) -> Self {
        BigReal(Float::with_val(precision, v))
    }

    pub fn from_f64(v: f64, precision: u32) -> Self {
        BigReal(Float::with_val(precision, v))
    }

    pub fn zero(precision: u32) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: u32) -> Self {
        Self::from_i64(1, precision)
    }

    pub fn parse(s: &str, precision: u32) -> Result<Self> {
        let parsed = Float::parse(s.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(BigReal(Float::with_val(precision, parsed)))
    }

    pub fn precision(&self) -> u32 {
        self.0.prec()
    }

    /// The same value re-rounded (or exactly widened) to `precision` bits.
    pub fn with_precision(&self, precision: u32) -> Self {
        BigReal(Float::with_val(precision, &self.0))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    /// Exact rational value of a finite float.
    pub fn to_rational(&self) -> Option<Rational> {
        let r = self.0.to_rational()?;
        let (n, d) = r.into_numer_denom();
        let n: num_bigint::BigInt = n.to_string().parse().ok()?;
        let d: num_bigint::BigInt = d.to_string().parse().ok()?;
        Some(Rational::new(n, d))
    }

    /// Decimal string with enough significant digits to round-trip.
    pub fn to_decimal_string(&self) -> String {
        self.to_decimal_digits(digits_for_bits(self.precision()))
    }

    pub fn to_decimal_digits(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix(10, Some(digits.max(1)))
    }

    /// 2^e, exact.
    pub fn exp2(e: i32, precision: u32) -> Self {
        BigReal(Float::with_val(precision, Float::i_exp(1, e)))
    }

    pub fn pi(precision: u32) -> Self {
        BigReal(Float::with_val(precision, rug::float::Constant::Pi))
    }

    pub fn hypot(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        BigReal(self.0.hypot_ref(&other.0).complete(p))
    }

    fn binary<F>(a: &Self, b: &Self, op: F) -> Self
    where
        F: FnOnce(&Float, &Float, u32) -> Float,
    {
        let p = a.precision().min(b.precision());
        BigReal(op(&a.0, &b.0, p))
    }
}

/// Square root of `x` at `precision` bits.
pub fn big_sqrt(x: &BigReal, precision: u32) -> Result<BigReal> {
    if x.0.is_sign_negative() && !x.0.is_zero() {
        return Err(Error::NegativeInput);
    }
    Ok(BigReal(x.0.sqrt_ref().complete(precision)))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                BigReal::binary(&self, &rhs, |a, b, p| (a $op b).complete(p))
            }
        }
        impl<'a> $trait<&'a BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'a BigReal) -> BigReal {
                BigReal::binary(self, rhs, |a, b, p| (a $op b).complete(p))
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
forward_binop!(Div, div, /);
forward_binop!(Rem, rem, %);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal((-&self.0).complete(self.precision()))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.to_decimal_digits(d)),
            None => f.write_str(&self.to_decimal_string()),
        }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, {} bits)", self.to_decimal_digits(24), self.precision())
    }
}

impl Scalar for BigReal {
    fn lift(q: &Rational, like: &Self) -> Self {
        BigReal::from_rational(q, like.precision())
    }
    fn lift_int(v: i64, like: &Self) -> Self {
        BigReal::from_i64(v, like.precision())
    }
    fn is_zero_value(&self) -> bool {
        self.0.is_zero()
    }
    fn try_sqrt(&self) -> Option<Self> {
        big_sqrt(self, self.precision()).ok()
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn sign(&self) -> Ordering {
        self.0.cmp0().unwrap_or(Ordering::Equal)
    }
}

impl Real for BigReal {
    fn sqrt(&self) -> Self {
        BigReal(self.0.sqrt_ref().complete(self.precision()))
    }
    fn ln(&self) -> Self {
        BigReal(self.0.ln_ref().complete(self.precision()))
    }
    fn exp(&self) -> Self {
        BigReal(self.0.exp_ref().complete(self.precision()))
    }
    fn abs(&self) -> Self {
        BigReal(self.0.abs_ref().complete(self.precision()))
    }
    fn precision_bits(&self) -> Option<u32> {
        Some(self.precision())
    }
    fn parse_like(s: &str, like: &Self) -> Result<Self> {
        BigReal::parse(s, like.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_zero_and_perfect_square() {
        assert!(big_sqrt(&BigReal::zero(128), 128).unwrap().is_zero_value());
        let two = big_sqrt(&BigReal::from_i64(4, 64), 4096).unwrap();
        assert_eq!(two, BigReal::from_i64(2, 4096));
    }

    #[test]
    fn sqrt_rejects_negative() {
        assert_eq!(big_sqrt(&BigReal::from_i64(-1, 64), 64), Err(Error::NegativeInput));
    }

    #[test]
    fn sqrt_three_matches_newton_oracle() {
        // Newton iteration on exact rationals, independent of MPFR.
        let mut q = Rational::from_integer(2.into());
        let three = Rational::from_integer(3.into());
        let half = Rational::new(1.into(), 2.into());
        for _ in 0..9 {
            q = &half * (&q + &three / &q);
        }
        let p = 512;
        let oracle = BigReal::from_rational(&q, p);
        let got = big_sqrt(&BigReal::from_i64(3, p), p).unwrap();
        let err = (&got - &oracle).abs();
        let bound = BigReal(Float::with_val(p, Float::i_exp(1, 2 - p as i32)));
        assert!(err <= bound, "{err:?}");
        assert!(got.to_decimal_digits(12).starts_with("1.7320508075"));
        // |r^2 - x| <= 2^(1-p) x
        let resid = (&(&got * &got) - &BigReal::from_i64(3, p)).abs();
        let tol = BigReal(Float::with_val(p, Float::i_exp(3, 1 - p as i32)));
        assert!(resid <= tol);
    }

    #[test]
    fn combining_uses_minimum_precision() {
        let a = BigReal::from_i64(1, 300);
        let b = BigReal::from_i64(3, 100);
        assert_eq!((&a / &b).precision(), 100);
        assert_eq!(a.with_precision(500).precision(), 500);
    }

    #[test]
    fn decimal_string_round_trips() {
        let p = 1000;
        let x = BigReal::from_i64(2, p).sqrt() / BigReal::from_i64(7, p);
        let s = x.to_decimal_string();
        assert_eq!(BigReal::parse(&s, p).unwrap(), x);
    }

    #[test]
    fn bits_digits_conversion() {
        assert_eq!(bits_for_digits(1200), 3987);
        assert_eq!(bits_for_digits(1), 4);
    }

    #[test]
    fn rational_arithmetic_agrees_after_rounding() {
        let p = 200;
        let a = Rational::new(355.into(), 113.into());
        let b = Rational::new((-22).into(), 7.into());
        let exact = &a * &b + &a / &b;
        let got = BigReal::from_rational(&a, p) * BigReal::from_rational(&b, p)
            + BigReal::from_rational(&a, p) / BigReal::from_rational(&b, p);
        let reference = BigReal::from_rational(&exact, p);
        let rel = ((&got - &reference) / reference.clone()).abs();
        assert!(rel.to_f64() < 1e-58);
    }
}
