//! Scalar abstractions and the concrete number types used throughout the crate.
//!
//! Map and coordinate code is written once against [`Scalar`] and runs on
//! `f32`/`f64` for quick exploration, on [`Rational`] for exact structural
//! checks, and on [`BigReal`] for production orbits. Precision is never global:
//! a `BigReal` carries its own bit count and constants are lifted "like" an
//! existing value so they inherit its precision.

mod bigreal;
mod gamma_poly;
mod params;
mod rational;

pub use bigreal::{big_sqrt, bits_for_digits, digits_for_bits, BigReal};
pub use gamma_poly::{eval_gamma_poly, GammaPoly};
pub use params::{Params, ParamsRecord, DEFAULT_CONTRACTIONS, DEFAULT_PRECISION_BITS};
pub use rational::{format_rational, parse_rational, Rational};

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::NumOps;

/// Field-like scalar on which the maps are defined.
pub trait Scalar: Clone + Debug + PartialOrd + NumOps + Neg<Output = Self> + Send + Sync {
    /// The exact rational `q`, represented at the precision of `like`.
    fn lift(q: &Rational, like: &Self) -> Self;

    fn lift_int(v: i64, like: &Self) -> Self {
        Self::lift(&Rational::from_integer(BigInt::from(v)), like)
    }

    fn is_zero_value(&self) -> bool;

    /// Square root when it is representable: always for non-negative floats,
    /// only for perfect squares in exact arithmetic.
    fn try_sqrt(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn sign(&self) -> Ordering {
        let zero = Self::lift_int(0, self);
        self.partial_cmp(&zero).unwrap_or(Ordering::Equal)
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

/// Scalars that approximate the reals (everything except exact rationals).
pub trait Real: Scalar {
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn abs(&self) -> Self;
    /// Working precision in bits, `None` for hardware floats.
    fn precision_bits(&self) -> Option<u32>;
    /// Parse a decimal literal at the precision of `like`.
    fn parse_like(s: &str, like: &Self) -> crate::Result<Self>;
}

macro_rules! impl_hardware_float {
    ($t:ty) => {
        impl Scalar for $t {
            fn lift(q: &Rational, _like: &Self) -> Self {
                num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN) as $t
            }
            fn is_zero_value(&self) -> bool {
                *self == 0.0
            }
            fn try_sqrt(&self) -> Option<Self> {
                (*self >= 0.0).then(|| <$t>::sqrt(*self))
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }

        impl Real for $t {
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn precision_bits(&self) -> Option<u32> {
                None
            }
            fn parse_like(s: &str, _like: &Self) -> crate::Result<Self> {
                s.trim()
                    .parse::<$t>()
                    .map_err(|e| crate::Error::Parse(format!("{s:?}: {e}")))
            }
        }
    };
}

impl_hardware_float!(f32);
impl_hardware_float!(f64);

impl Scalar for Rational {
    fn lift(q: &Rational, _like: &Self) -> Self {
        q.clone()
    }
    fn is_zero_value(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn try_sqrt(&self) -> Option<Self> {
        rational::exact_sqrt(self)
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
