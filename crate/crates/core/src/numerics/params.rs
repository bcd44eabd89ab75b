use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, BigReal, Rational};
use crate::{Error, Result};

/// Default working precision for orbit runs over n in [-225, 225].
pub const DEFAULT_PRECISION_BITS: u32 = 4096;
pub const DEFAULT_CONTRACTIONS: usize = 800;

/// Run configuration: the map parameters r and N (exact), the working
/// precision and the number of Lew-Quarles contractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    r: Rational,
    n_scale: Rational,
    pub precision_bits: u32,
    pub contraction_count: usize,
}

impl Params {
    pub fn new(r: Rational, n_scale: Rational) -> Result<Self> {
        Self::with_settings(r, n_scale, DEFAULT_PRECISION_BITS, DEFAULT_CONTRACTIONS)
    }

    pub fn with_settings(
        r: Rational,
        n_scale: Rational,
        precision_bits: u32,
        contraction_count: usize,
    ) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidParams(format!("r must be > 0, got {r}")));
        }
        if !n_scale.is_positive() {
            return Err(Error::InvalidParams(format!("N must be > 0, got {n_scale}")));
        }
        if precision_bits < 64 {
            return Err(Error::InvalidParams(format!(
                "precision must be at least 64 bits, got {precision_bits}"
            )));
        }
        if contraction_count == 0 {
            return Err(Error::InvalidParams("contraction count must be >= 1".into()));
        }
        Ok(Params {
            r,
            n_scale,
            precision_bits,
            contraction_count,
        })
    }

    /// r = N = 1 at default precision.
    pub fn unit() -> Self {
        Self::new(Rational::one(), Rational::one()).expect("unit parameters are valid")
    }

    pub fn with_precision(mut self, bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::InvalidParams(format!("precision must be at least 64 bits, got {bits}")));
        }
        self.precision_bits = bits;
        Ok(self)
    }

    pub fn with_contractions(mut self, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParams("contraction count must be >= 1".into()));
        }
        self.contraction_count = count;
        Ok(self)
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// The scale parameter N.
    pub fn n_scale(&self) -> &Rational {
        &self.n_scale
    }

    /// gamma = r / N, exact.
    pub fn gamma(&self) -> Rational {
        &self.r / &self.n_scale
    }

    /// alpha_n = n / N.
    pub fn alpha(&self, n: i64) -> Rational {
        Rational::from_integer(n.into()) / &self.n_scale
    }

    /// The coefficient n / (N r) of 1/x in the map.
    pub fn step_coefficient(&self, n: i64) -> Rational {
        if n == 0 {
            return Rational::zero();
        }
        Rational::from_integer(n.into()) / (&self.n_scale * &self.r)
    }

    pub fn inv_r(&self) -> Rational {
        self.r.recip()
    }

    /// A zero at working precision, used to anchor lifted constants.
    pub fn zero_real(&self) -> BigReal {
        BigReal::zero(self.precision_bits)
    }

    pub fn real(&self, q: &Rational) -> BigReal {
        BigReal::from_rational(q, self.precision_bits)
    }

    pub fn to_record(&self) -> ParamsRecord {
        ParamsRecord {
            r: format_rational(&self.r),
            n_scale: format_rational(&self.n_scale),
            gamma: format_rational(&self.gamma()),
            precision_bits: self.precision_bits,
            contraction_count: self.contraction_count,
        }
    }
}

/// Serializable mirror of [`Params`] with rationals as `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub r: String,
    #[serde(rename = "N")]
    pub n_scale: String,
    pub gamma: String,
    pub precision_bits: u32,
    pub contraction_count: usize,
}

impl TryFrom<&ParamsRecord> for Params {
    type Error = Error;
    fn try_from(rec: &ParamsRecord) -> Result<Self> {
        Params::with_settings(
            parse_rational(&rec.r)?,
            parse_rational(&rec.n_scale)?,
            rec.precision_bits,
            rec.contraction_count,
        )
    }
}
