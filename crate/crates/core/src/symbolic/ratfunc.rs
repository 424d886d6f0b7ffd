use std::fmt;

use num_traits::Zero;

use super::{gcd, primitive_normalize, Poly, VarSpace, Q};
use crate::error::{Error, Result};

/// Quotient of polynomials in lowest terms. The denominator is a primitive
/// integer polynomial with positive leading coefficient, so equal rational
/// functions have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        if num.space() != den.space() {
            return Err(Error::ContextMismatch(
                "numerator and denominator spaces".into(),
            ));
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.space()));
        }
        let g = gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let (den, c) = primitive_normalize(&den);
        Ok(RatFunc {
            num: num.scale(&c.recip()),
            den,
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let s = p.space();
        RatFunc {
            num: p,
            den: Poly::one(s),
        }
    }

    pub fn zero(space: VarSpace) -> Self {
        RatFunc::from_poly(Poly::zero(space))
    }

    pub fn one(space: VarSpace) -> Self {
        RatFunc::from_poly(Poly::one(space))
    }

    pub fn constant(space: VarSpace, c: Q) -> Self {
        RatFunc::from_poly(Poly::constant(space, c))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn space(&self) -> VarSpace {
        self.num.space()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial value, if the denominator is a constant.
    pub fn as_poly(&self) -> Option<Poly> {
        self.is_polynomial()
            .then(|| self.num.scale(&self.den.constant_term().recip()))
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone()).expect("nonzero");
        }
        RatFunc::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("nonzero")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.space());
        }
        RatFunc::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero")
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        RatFunc::new(&self.num * p, self.den.clone()).expect("nonzero")
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.space());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn shift(&self, lambda: &[i64]) -> RatFunc {
        RatFunc::new(self.num.shift(lambda), self.den.shift(lambda))
            .expect("shift keeps den nonzero")
    }

    pub fn weyl_act(&self, x_matrix: &[Vec<i64>]) -> RatFunc {
        RatFunc::new(self.num.weyl_act(x_matrix), self.den.weyl_act(x_matrix))
            .expect("invertible substitution")
    }

    /// Specializes `hbar = 0`; fails if the denominator vanishes there.
    pub fn at_hbar_zero(&self) -> Result<RatFunc> {
        let d = self.den.at_hbar_zero();
        if d.is_zero() {
            return Err(Error::Invalid("denominator vanishes at hbar = 0".into()));
        }
        RatFunc::new(self.num.at_hbar_zero(), d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_poly() {
            return write!(f, "{p}");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{q, qr};

    fn s() -> VarSpace {
        VarSpace::new(1, 0)
    }

    #[test]
    fn cancels_common_factor() {
        let t = Poly::t(s(), 0);
        let h = Poly::hbar(s());
        let r = RatFunc::new(&(&t * &t) - &(&h * &h), &t + &h).unwrap();
        assert_eq!(r.as_poly(), Some(&t - &h));
    }

    #[test]
    fn zero_numerator_normalizes() {
        let r = RatFunc::new(Poly::zero(s()), Poly::t(s(), 0)).unwrap();
        assert_eq!(r, RatFunc::zero(s()));
        assert_eq!(r.denom(), &Poly::one(s()));
    }

    #[test]
    fn scalar_moves_into_numerator() {
        let t = Poly::t(s(), 0);
        let r = RatFunc::new(t.scale(&q(2)), (&t * &t).scale(&q(4))).unwrap();
        assert_eq!(r.numer(), &Poly::constant(s(), qr(1, 2)));
        assert_eq!(r.denom(), &t);
        assert_eq!(r.to_string(), "(1/2)/(t1)");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(Poly::one(s()), Poly::zero(s())).is_err());
    }

    #[test]
    fn equal_fractions_compare_equal() {
        let t = Poly::t(s(), 0);
        let a = RatFunc::new(Poly::one(s()), t.clone()).unwrap();
        let b = RatFunc::new(t.scale(&q(-3)), (&t * &t).scale(&q(-3))).unwrap();
        assert_eq!(a, b);
    }
}
