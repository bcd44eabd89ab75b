use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::numerics::{GammaPoly, Rational};

/// a + b sqrt(d) with a, b polynomials in gamma and d a fixed positive rational.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadGamma {
    pub d: Rational,
    pub a: GammaPoly,
    pub b: GammaPoly,
}

impl QuadGamma {
    pub fn rational(d: &Rational, a: GammaPoly) -> Self {
        QuadGamma {
            d: d.clone(),
            a,
            b: GammaPoly::default(),
        }
    }

    /// c sqrt(d).
    pub fn surd(d: &Rational, c: GammaPoly) -> Self {
        QuadGamma {
            d: d.clone(),
            a: GammaPoly::default(),
            b: c,
        }
    }

    pub fn zero(d: &Rational) -> Self {
        Self::rational(d, GammaPoly::default())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadGamma {
            d: self.d.clone(),
            a: self.a.scale(q),
            b: self.b.scale(q),
        }
    }

    pub fn mul_poly(&self, p: &GammaPoly) -> Self {
        QuadGamma {
            d: self.d.clone(),
            a: &self.a * p,
            b: &self.b * p,
        }
    }

    /// self / (c sqrt(d)) for a nonzero rational c:
    /// (a + b sqrt d) / (c sqrt d) = b/c + (a/(c d)) sqrt d.
    pub fn div_surd(&self, c: &Rational) -> Self {
        QuadGamma {
            d: self.d.clone(),
            a: self.b.scale(&c.recip()),
            b: self.a.scale(&(c * &self.d).recip()),
        }
    }
}

impl Add for &QuadGamma {
    type Output = QuadGamma;
    fn add(self, rhs: &QuadGamma) -> QuadGamma {
        debug_assert_eq!(self.d, rhs.d);
        QuadGamma {
            d: self.d.clone(),
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &QuadGamma {
    type Output = QuadGamma;
    fn sub(self, rhs: &QuadGamma) -> QuadGamma {
        debug_assert_eq!(self.d, rhs.d);
        QuadGamma {
            d: self.d.clone(),
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &QuadGamma {
    type Output = QuadGamma;
    fn mul(self, rhs: &QuadGamma) -> QuadGamma {
        debug_assert_eq!(self.d, rhs.d);
        let bb = (&self.b * &rhs.b).scale(&self.d);
        QuadGamma {
            d: self.d.clone(),
            a: &(&self.a * &rhs.a) + &bb,
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
        }
    }
}

impl Neg for &QuadGamma {
    type Output = QuadGamma;
    fn neg(self) -> QuadGamma {
        QuadGamma {
            d: self.d.clone(),
            a: -&self.a,
            b: -&self.b,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_squared_is_d() {
        let d = q(3, 1);
        let r = QuadGamma::surd(&d, GammaPoly::from_ints(&[1]));
        assert_eq!(&r * &r, QuadGamma::rational(&d, GammaPoly::from_ints(&[3])));
    }

    #[test]
    fn division_inverts_multiplication() {
        let d = q(3, 1);
        let x = QuadGamma {
            d: d.clone(),
            a: GammaPoly::from_ints(&[1, 2]),
            b: GammaPoly::from_ints(&[0, -5]),
        };
        let c = q(-7, 2);
        let by = QuadGamma::surd(&d, GammaPoly::constant(c.clone()));
        assert_eq!(&x.div_surd(&c) * &by, x);
    }
}
