//! Exact arithmetic kernel.
//!
//! Rationals are [`num_rational::BigRational`]. Polynomials live in a fixed
//! variable space `t1..tr, hbar, b1..bm` described by [`VarSpace`]; rational
//! functions are gcd-reduced quotients of such polynomials; power series are
//! truncated and indexed by half-integer exponents.

mod gcd;
mod poly;
mod ratfunc;
mod series;

pub use gcd::{gcd, primitive_normalize};
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;
pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalars.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Invalid("zero denominator".into()));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The ordered variable list `t1..t_rank, hbar, b1..b_flavors`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSpace {
    pub rank: usize,
    pub flavors: usize,
}

impl VarSpace {
    pub fn new(rank: usize, flavors: usize) -> Self {
        VarSpace { rank, flavors }
    }

    pub fn nvars(&self) -> usize {
        self.rank + 1 + self.flavors
    }

    pub fn hbar(&self) -> usize {
        self.rank
    }

    pub fn flavor(&self, i: usize) -> usize {
        self.rank + 1 + i
    }

    pub fn is_t(&self, v: usize) -> bool {
        v < self.rank
    }

    pub fn name(&self, v: usize) -> String {
        if v < self.rank {
            format!("t{}", v + 1)
        } else if v == self.rank {
            "hbar".to_string()
        } else {
            format!("b{}", v - self.rank)
        }
    }

    /// Resolves a variable name; `a` is accepted for `t1` in rank one.
    pub fn lookup(&self, name: &str) -> Option<usize> {
        if name == "hbar" {
            return Some(self.hbar());
        }
        if name == "a" && self.rank == 1 {
            return Some(0);
        }
        let (prefix, idx) = name.split_at(1.min(name.len()));
        let idx: usize = idx.parse().ok()?;
        if idx == 0 {
            return None;
        }
        match prefix {
            "t" if idx <= self.rank => Some(idx - 1),
            "b" if idx <= self.flavors => Some(self.flavor(idx - 1)),
            _ => None,
        }
    }
}
