use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, q, Q};
use crate::error::{Error, Result};

/// Power series in `t` truncated at an inclusive bound.
///
/// Exponents are stored as integers counting powers of `t^{1/2}`, so the key
/// `4` means `t^2`. Every exponent up to `order` is known exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<i64, Q>,
    order: i64,
}

impl TruncatedSeries {
    pub fn zero(order: i64) -> Self {
        TruncatedSeries {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        TruncatedSeries::monomial(0, q(1), order)
    }

    /// `c · t^{half/2}`.
    pub fn monomial(half: i64, c: Q, order: i64) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if half <= order && !c.is_zero() {
            s.coeffs.insert(half, c);
        }
        s
    }

    /// `1/(1 − t^{step/2})` for `step > 0`.
    pub fn geometric(step: i64, order: i64) -> Self {
        assert!(step > 0);
        let mut s = TruncatedSeries::zero(order);
        let mut e = 0;
        while e <= order {
            s.coeffs.insert(e, q(1));
            e += step;
        }
        s
    }

    /// Builds a series from `(half-exponent, coefficient)` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Q)>, order: i64) -> Self {
        let mut s = TruncatedSeries::zero(order);
        for (e, c) in pairs {
            s.add_coeff(e, c);
        }
        s
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, half: i64) -> Q {
        self.coeffs.get(&half).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the integral power `t^k`.
    pub fn coeff_t(&self, k: i64) -> Q {
        self.coeff(2 * k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Q)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_coeff(&mut self, half: i64, c: Q) {
        if half > self.order || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(half).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&half);
        }
    }

    /// Lowest exponent present, or `order + 1` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.order + 1)
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .range(..=order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            order,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (e, c) in other.coeffs.range(..=order) {
            out.add_coeff(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = TruncatedSeries::zero(self.order);
        for (e, x) in &self.coeffs {
            out.add_coeff(*e, x * c);
        }
        out
    }

    /// Multiplication by `t^{half/2}`.
    pub fn shift(&self, half: i64) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + half, c.clone()))
                .collect(),
            order: self.order + half,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation())
            .min(other.order + self.valuation())
            .min(self.order.max(other.order));
        let mut out = TruncatedSeries::zero(order);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                if ea + eb > order {
                    break;
                }
                out.add_coeff(ea + eb, ca * cb);
            }
        }
        out
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() || self.valuation() < 0 {
            return Err(Error::Invalid("series is not a unit".into()));
        }
        let inv0 = c0.recip();
        let mut out = TruncatedSeries::zero(self.order);
        out.coeffs.insert(0, inv0.clone());
        for n in 1..=self.order {
            let mut acc = Q::zero();
            for (e, c) in self.coeffs.range(1..=n) {
                acc += c * out.coeff(n - e);
            }
            out.add_coeff(n, -acc * &inv0);
        }
        Ok(out)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let power = if e % 2 == 0 {
                format!("{}", e / 2)
            } else {
                format!("{e}/2")
            };
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{}", fmt_rational(&abs))?,
                (2, true) => write!(f, "t")?,
                (2, false) => write!(f, "{}*t", fmt_rational(&abs))?,
                (_, true) => write!(f, "t^{power}")?,
                (_, false) => write!(f, "{}*t^{power}", fmt_rational(&abs))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        let bound = self.order + 1;
        if bound % 2 == 0 {
            write!(f, " + O(t^{})", bound / 2)
        } else {
            write!(f, " + O(t^{bound}/2)")
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coeffs_t(s: &TruncatedSeries, upto: i64) -> Vec<i64> {
        (0..=upto)
            .map(|k| {
                let c = s.coeff_t(k);
                assert!(c.is_integer());
                c.to_integer().try_into().unwrap()
            })
            .collect()
    }

    #[test]
    fn geometric_inverse() {
        let one_minus = TruncatedSeries::from_pairs([(0, q(1)), (4, q(-1))], 12);
        let inv = one_minus.inverse().unwrap();
        assert_eq!(inv, TruncatedSeries::geometric(4, 12));
        assert_eq!(coeffs_t(&inv, 6), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncatedSeries::from_pairs([(0, q(1)), (4, q(1))], 20);
        let b = TruncatedSeries::from_pairs([(0, q(1)), (4, q(-1))], 20);
        assert_eq!(
            a.mul(&b),
            TruncatedSeries::from_pairs([(0, q(1)), (8, q(-1))], 20)
        );
    }

    #[test]
    fn squared_geometric_convolution() {
        let g = TruncatedSeries::geometric(8, 16);
        let sq = g.mul(&g);
        assert_eq!(coeffs_t(&sq, 8), vec![1, 0, 0, 0, 2, 0, 0, 0, 3]);
    }

    #[test]
    fn non_unit_rejected() {
        let s = TruncatedSeries::monomial(2, q(1), 10);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn display_uses_integral_powers() {
        let s = TruncatedSeries::from_pairs([(0, q(1)), (4, q(3)), (5, q(-2))], 8);
        assert_eq!(s.to_string(), "1 + 3*t^2 - 2*t^5/2 + O(t^9/2)");
    }

    proptest! {
        #[test]
        fn matches_polynomial_product(a in prop::collection::vec(-4i64..5, 0..6),
                                      b in prop::collection::vec(-4i64..5, 0..6)) {
            let order = 40;
            let sa = TruncatedSeries::from_pairs(a.iter().enumerate().map(|(i, &c)| (i as i64, q(c))), order);
            let sb = TruncatedSeries::from_pairs(b.iter().enumerate().map(|(i, &c)| (i as i64, q(c))), order);
            let mut full = vec![0i64; a.len() + b.len()];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    full[i + j] += x * y;
                }
            }
            let expect = TruncatedSeries::from_pairs(full.iter().enumerate().map(|(i, &c)| (i as i64, q(c))), order);
            prop_assert_eq!(sa.mul(&sb), expect);
        }
    }
}
