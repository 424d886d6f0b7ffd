use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, q, VarSpace, Q};
use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with `t1` the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, v: usize, e: u32) -> Self {
        let mut m = vec![0; n];
        m[v] = e;
        Monomial(m)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Arithmetic operators panic when the variable spaces differ; the `try_*`
/// methods report the mismatch as an error instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    space: VarSpace,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(space: VarSpace) -> Self {
        Poly {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: VarSpace, c: Q) -> Self {
        let mut p = Poly::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(space.nvars()), c);
        }
        p
    }

    pub fn one(space: VarSpace) -> Self {
        Poly::constant(space, q(1))
    }

    pub fn var(space: VarSpace, v: usize) -> Self {
        assert!(v < space.nvars(), "variable index out of range");
        let mut p = Poly::zero(space);
        p.terms.insert(Monomial::var(space.nvars(), v, 1), q(1));
        p
    }

    pub fn t(space: VarSpace, i: usize) -> Self {
        Poly::var(space, i)
    }

    pub fn hbar(space: VarSpace) -> Self {
        Poly::var(space, space.hbar())
    }

    pub fn flavor(space: VarSpace, i: usize) -> Self {
        Poly::var(space, space.flavor(i))
    }

    /// The linear form `Σ χ_j t_j`.
    pub fn linear_form(space: VarSpace, chi: &[i64]) -> Self {
        let mut p = Poly::zero(space);
        for (j, &c) in chi.iter().enumerate() {
            if c != 0 {
                p.terms.insert(Monomial::var(space.nvars(), j, 1), q(c));
            }
        }
        p
    }

    pub fn monomial(space: VarSpace, m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero(space);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&Monomial::one(self.space.nvars()))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "polynomial spaces {:?} and {:?}",
                self.space, other.space
            )))
        }
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.space));
        }
        let mut acc: std::collections::HashMap<Monomial, Q> =
            std::collections::HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                *acc.entry(ma.mul(mb)).or_insert_with(Q::zero) += prod;
            }
        }
        Ok(Poly {
            space: self.space,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.space);
        }
        Poly {
            space: self.space,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.space);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert_eq!(self.space, d.space, "polynomial spaces differ");
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.space);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            let step = d.mul_monomial(&qm).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Simultaneous substitution of variables; `None` entries are kept.
    pub fn substitute(&self, images: &[Option<Poly>]) -> Poly {
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        let mut out = Poly::zero(self.space);
        for (m, c) in &self.terms {
            let mut kept = Monomial::one(self.space.nvars());
            let mut term = Poly::constant(self.space, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match images.get(v).and_then(|x| x.as_ref()) {
                    None => kept.0[v] = e,
                    Some(img) => {
                        let powers = &mut cache[v];
                        if powers.is_empty() {
                            powers.push(Poly::one(self.space));
                        }
                        while powers.len() <= e as usize {
                            let next = powers.last().unwrap() * img;
                            powers.push(next);
                        }
                        term = &term * &powers[e as usize];
                    }
                }
            }
            let term = term.mul_monomial(&kept);
            for (k, x) in term.terms {
                out.add_term(k, x);
            }
        }
        out
    }

    /// Sets variable `v` to the rational value `val`.
    pub fn evaluate_var(&self, v: usize, val: &Q) -> Poly {
        let mut out = Poly::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut k = m.clone();
            k.0[v] = 0;
            let factor = if e == 0 {
                q(1)
            } else {
                num_traits::pow::pow(val.clone(), e as usize)
            };
            out.add_term(k, c * factor);
        }
        out
    }

    pub fn at_hbar_zero(&self) -> Poly {
        self.evaluate_var(self.space.hbar(), &q(0))
    }

    /// Exact division by `hbar`; `None` if some term lacks a factor of `hbar`.
    pub fn div_hbar(&self) -> Option<Poly> {
        let h = self.space.hbar();
        let mut out = Poly::zero(self.space);
        for (m, c) in &self.terms {
            if m.0[h] == 0 {
                return None;
            }
            let mut k = m.clone();
            k.0[h] -= 1;
            out.terms.insert(k, c.clone());
        }
        Some(out)
    }

    /// `t_i ↦ t_i + λ_i ħ`, so every linear form `α` goes to `α + ħ⟨α,λ⟩`.
    pub fn shift(&self, lambda: &[i64]) -> Poly {
        if lambda.iter().all(|&x| x == 0) || self.is_constant() {
            return self.clone();
        }
        let h = Poly::hbar(self.space);
        let images: Vec<Option<Poly>> = (0..self.space.rank)
            .map(|i| {
                let li = lambda.get(i).copied().unwrap_or(0);
                (li != 0).then(|| &Poly::t(self.space, i) + &h.scale(&q(li)))
            })
            .collect();
        self.substitute(&images)
    }

    /// Contragredient action on the `t` variables: `t_j ↦ Σ_k M[k][j] t_k`,
    /// where `M` is the matrix of the group element on the weight lattice.
    pub fn weyl_act(&self, x_matrix: &[Vec<i64>]) -> Poly {
        let r = self.space.rank;
        let images: Vec<Option<Poly>> = (0..r)
            .map(|j| {
                let col: Vec<i64> = (0..r).map(|k| x_matrix[k][j]).collect();
                Some(Poly::linear_form(self.space, &col))
            })
            .collect();
        self.substitute(&images)
    }

    /// Moves the polynomial to another space. `map` sends old variable
    /// indices to new ones; a variable mapped to `None` must not occur.
    pub fn reindex(&self, space: VarSpace, map: impl Fn(usize) -> Option<usize>) -> Result<Poly> {
        let mut out = Poly::zero(space);
        for (m, c) in &self.terms {
            let mut k = Monomial::one(space.nvars());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let nv = map(v).ok_or_else(|| {
                    Error::ContextMismatch(format!("variable {} has no image", self.space.name(v)))
                })?;
                k.0[nv] += e;
            }
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    /// Same variables, flavor parameters appended or removed at the end.
    pub fn with_flavors(&self, flavors: usize) -> Result<Poly> {
        let old = self.space;
        self.reindex(VarSpace::new(old.rank, flavors), |v| {
            if v <= old.rank || v - old.rank - 1 < flavors {
                Some(v)
            } else {
                None
            }
        })
    }

    /// Splits into coefficients of powers of variable `v`.
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut k = m.clone();
            k.0[v] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(self.space))
                .add_term(k, c.clone());
        }
        out
    }

    /// Rebuilds `Σ c_e v^e` from [`Poly::coeffs_in`] output.
    pub fn from_coeffs_in(space: VarSpace, v: usize, coeffs: &BTreeMap<u32, Poly>) -> Poly {
        let mut out = Poly::zero(space);
        for (&e, c) in coeffs {
            let shifted = c.mul_monomial(&Monomial::var(space.nvars(), v, e));
            for (k, x) in shifted.terms {
                out.add_term(k, x);
            }
        }
        out
    }

    pub fn leading_coeff_sign_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| {
                        let name = self.space.name(v);
                        if e == 1 {
                            name
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$try(rhs).expect("polynomial spaces differ")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$try(&rhs).expect("polynomial spaces differ")
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$try(rhs).expect("polynomial spaces differ")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&q(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&q(-1))
    }
}
