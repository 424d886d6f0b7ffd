//! Randomized checks of the algebra axioms.
//!
//! Each check samples its cases from a [`Sampler`] and collects every
//! counterexample instead of stopping at the first.

use serde::Serialize;

use crate::abelian_algebra::{
    multiply, poisson_bracket, rep_embedding, sigma_twist, sigma_twist_inverse, Context, Mode,
};
use crate::cli::expr::parse_element;
use crate::error::Result;
use crate::lattice::{MatterContent, Weight};
use crate::random::Sampler;

/// Outcome of one randomized property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    fn new(name: impl Into<String>) -> Self {
        PropertyReport {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rank_of(case: usize) -> usize {
    1 + case % 3
}

/// `(xy)z = x(yz)` over ranks 1 to 3.
pub fn associativity(s: &mut Sampler, mode: Mode, cases: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new(format!("associativity ({})", mode.as_str()));
    for case in 0..cases {
        let ctx = s.context(rank_of(case), mode);
        let (x, y, z) = (s.element(&ctx), s.element(&ctx), s.element(&ctx));
        let left = multiply(&multiply(&x, &y)?, &z)?;
        let right = multiply(&x, &multiply(&y, &z)?)?;
        rep.record(left == right, || format!("x = {x}, y = {y}, z = {z}"));
    }
    Ok(rep)
}

/// `xy = yx` in the classical algebra.
pub fn commutativity(s: &mut Sampler, cases: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("commutativity (classical)");
    for case in 0..cases {
        let ctx = s.context(rank_of(case), Mode::Classical);
        let (x, y) = (s.element(&ctx), s.element(&ctx));
        rep.record(multiply(&x, &y)? == multiply(&y, &x)?, || {
            format!("x = {x}, y = {y}")
        });
    }
    Ok(rep)
}

/// The sign twist is multiplicative and inverted by its inverse map.
pub fn sigma_isomorphism(s: &mut Sampler, mode: Mode, cases: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new(format!("sigma twist ({})", mode.as_str()));
    for case in 0..cases {
        let rank = rank_of(case);
        let ctx = Context::new(rank, s.chiral_matter(rank), mode)?;
        let i = case % ctx.matter().len();
        let w = ctx.matter().entries()[i].weight.clone();
        let (x, y) = (s.element(&ctx), s.element(&ctx));
        let (sx, sy) = (sigma_twist(&x, i)?, sigma_twist(&y, i)?);
        let sxy = sigma_twist(&multiply(&x, &y)?, i)?;
        let j = sx
            .ctx()
            .matter()
            .index_of(&w.neg())
            .expect("the flipped weight is present");
        let back = sigma_twist_inverse(&sx, j)?;
        let ok = sxy == multiply(&sx, &sy)? && back == x;
        rep.record(ok, || format!("entry {i}, x = {x}, y = {y}"));
    }
    Ok(rep)
}

/// The embedding removing one matter entry is multiplicative.
pub fn embedding_homomorphism(s: &mut Sampler, mode: Mode, cases: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new(format!("eta embedding ({})", mode.as_str()));
    for case in 0..cases {
        let ctx = s.context(rank_of(case), mode);
        let i = case % ctx.matter().len();
        let (x, y) = (s.element(&ctx), s.element(&ctx));
        let ok = rep_embedding(&multiply(&x, &y)?, i)?
            == multiply(&rep_embedding(&x, i)?, &rep_embedding(&y, i)?)?;
        rep.record(ok, || format!("entry {i}, x = {x}, y = {y}"));
    }
    Ok(rep)
}

/// Removing a self-dual pair `χ ⊕ −χ` preserves the Δ-grading.
pub fn self_dual_grading(s: &mut Sampler, mode: Mode, cases: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new(format!("self-dual grading ({})", mode.as_str()));
    for case in 0..cases {
        let rank = rank_of(case);
        let chi = loop {
            let w = Weight(s.coweight(rank).0);
            if !w.is_zero() {
                break w;
            }
        };
        let sampled = s.matter(rank);
        let base = MatterContent::new(
            rank,
            sampled
                .entries()
                .iter()
                .filter(|e| e.weight != chi && e.weight != chi.neg())
                .map(|e| (e.weight.clone(), e.mult)),
        )?;
        let pair = MatterContent::new(rank, [(chi.clone(), 1), (chi.neg(), 1)])?;
        let ctx = Context::new(rank, base.direct_sum(&pair)?, mode)?;
        let x = s.homogeneous_term(&ctx);
        let i = ctx.matter().index_of(&chi).expect("pair present");
        let once = rep_embedding(&x, i)?;
        let j = once
            .ctx()
            .matter()
            .index_of(&chi.neg())
            .expect("pair present");
        let twice = rep_embedding(&once, j)?;
        let before: Vec<i64> = x.grading().iter().map(|g| g.delta2).collect();
        let after: Vec<i64> = twice.grading().iter().map(|g| g.delta2).collect();
        let homogeneous = twice.grading().iter().all(|g| g.homogeneous);
        rep.record(before == after && homogeneous, || {
            format!("chi = {:?}, x = {x}", chi.0)
        });
    }
    Ok(rep)
}

/// Antisymmetry, Leibniz rule, Jacobi identity and degree `−1` of the
/// Poisson bracket on classical elements.
pub fn poisson_axioms(s: &mut Sampler, cases: usize) -> Result<Vec<PropertyReport>> {
    let mut anti = PropertyReport::new("poisson antisymmetry");
    let mut leibniz = PropertyReport::new("poisson leibniz");
    let mut jacobi = PropertyReport::new("poisson jacobi");
    let mut degree = PropertyReport::new("poisson degree");
    let pb = poisson_bracket;
    for case in 0..cases {
        let ctx = s.context(rank_of(case), Mode::Classical);
        let (x, y, z) = (s.element(&ctx), s.element(&ctx), s.element(&ctx));
        let show = || format!("x = {x}, y = {y}, z = {z}");
        anti.record(pb(&x, &y)? == pb(&y, &x)?.neg(), show);
        let lhs = pb(&x, &multiply(&y, &z)?)?;
        let rhs = multiply(&pb(&x, &y)?, &z)?.add(&multiply(&y, &pb(&x, &z)?)?)?;
        leibniz.record(lhs == rhs, show);
        let cyc = pb(&x, &pb(&y, &z)?)?
            .add(&pb(&y, &pb(&z, &x)?)?)?
            .add(&pb(&z, &pb(&x, &y)?)?)?;
        jacobi.record(cyc.is_zero(), show);
        let (u, v) = (s.homogeneous_term(&ctx), s.homogeneous_term(&ctx));
        let target = u.grading()[0].delta2 + v.grading()[0].delta2 - 2;
        let b = pb(&u, &v)?;
        let ok = b
            .grading()
            .iter()
            .all(|g| g.homogeneous && g.delta2 == target);
        degree.record(ok, || format!("u = {u}, v = {v}, bracket = {b}"));
    }
    Ok(vec![anti, leibniz, jacobi, degree])
}

/// Printing and parsing are mutually inverse.
pub fn print_parse_roundtrip(s: &mut Sampler, cases: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("print/parse round trip");
    let modes = [Mode::Classical, Mode::Quantized, Mode::Flavored];
    for case in 0..cases {
        let ctx = s.context(rank_of(case), modes[case % 3]);
        let x = s.element(&ctx);
        let printed = x.to_string();
        let ok = match parse_element(&printed, &ctx) {
            Ok(y) => y == x && y.to_string() == printed,
            Err(_) => false,
        };
        rep.record(ok, || printed.clone());
    }
    Ok(rep)
}

/// Every randomized check with `cases` cases each.
pub fn run_all(seed: u64, cases: usize) -> Result<Vec<PropertyReport>> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    for mode in [Mode::Classical, Mode::Quantized, Mode::Flavored] {
        out.push(associativity(&mut s, mode, cases)?);
    }
    out.push(commutativity(&mut s, cases)?);
    for mode in [Mode::Classical, Mode::Quantized] {
        out.push(sigma_isomorphism(&mut s, mode, cases)?);
        out.push(embedding_homomorphism(&mut s, mode, cases)?);
        out.push(self_dual_grading(&mut s, mode, cases)?);
    }
    out.extend(poisson_axioms(&mut s, cases)?);
    out.push(print_parse_roundtrip(&mut s, cases)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_properties_hold_on_a_small_sample() {
        for rep in run_all(11, 20).unwrap() {
            assert!(rep.passed(), "{}: {:?}", rep.name, rep.failures);
            assert_eq!(rep.cases, 20);
        }
    }
}
