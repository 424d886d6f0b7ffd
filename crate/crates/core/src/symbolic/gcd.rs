//! Multivariate gcd over the rationals: content extraction plus a primitive
//! polynomial remainder sequence in one main variable, recursing on the
//! coefficient ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, Q};

/// Scales `p` to have integer coefficients with gcd 1 and a positive leading
/// coefficient. Returns the scaled polynomial and the factor `c` with
/// `p = c · result`.
pub fn primitive_normalize(p: &Poly) -> (Poly, Q) {
    if p.is_zero() {
        return (p.clone(), Q::one());
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut content = Q::new(num_gcd, den_lcm);
    if p.leading().is_some_and(|(_, c)| c.is_negative()) {
        content = -content;
    }
    let inv = content.recip();
    (p.scale(&inv), content)
}

fn main_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.space().nvars())
        .rev()
        .find(|&v| a.uses_var(v) || b.uses_var(v))
}

fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.space());
    for c in p.coeffs_in(v).values() {
        g = gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn lc_in(coeffs: &BTreeMap<u32, Poly>) -> (u32, Poly) {
    let (e, c) = coeffs.iter().next_back().expect("nonzero polynomial");
    (*e, c.clone())
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let space = a.space();
    let bc = b.coeffs_in(v);
    let (n, lb) = lc_in(&bc);
    let mut r = a.clone();
    while !r.is_zero() {
        let rc = r.coeffs_in(v);
        let (m, lr) = lc_in(&rc);
        if m < n {
            break;
        }
        let shift = super::Monomial::var(space.nvars(), v, m - n);
        r = &(&r * &lb) - (&(b * &lr).mul_monomial(&shift));
    }
    r
}

/// Normalized greatest common divisor. `gcd(0, 0) = 0`; otherwise the result
/// has integer coprime coefficients and a positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.space(), b.space(), "polynomial spaces differ");
    if a.is_zero() {
        return primitive_normalize(b).0;
    }
    if b.is_zero() {
        return primitive_normalize(a).0;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.space());
    }
    let v = main_var(a, b).expect("non-constant input");
    match (a.uses_var(v), b.uses_var(v)) {
        (true, false) => return gcd(&content_in(a, v), b),
        (false, true) => return gcd(a, &content_in(b, v)),
        _ => {}
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let g_content = gcd(&ca, &cb);
    let mut p1 = a.div_exact(&ca).expect("content divides");
    let mut p2 = b.div_exact(&cb).expect("content divides");
    if p1.degree_in(v) < p2.degree_in(v) {
        std::mem::swap(&mut p1, &mut p2);
    }
    loop {
        let r = prem(&p1, &p2, v);
        if r.is_zero() {
            break;
        }
        if !r.uses_var(v) {
            return primitive_normalize(&g_content).0;
        }
        let cr = content_in(&r, v);
        p1 = p2;
        p2 = r.div_exact(&cr).expect("content divides");
    }
    let cp = content_in(&p2, v);
    let prim = p2.div_exact(&cp).expect("content divides");
    primitive_normalize(&(&g_content * &prim)).0
}
