//! Rank-one Coulomb branches as hypersurfaces `ξ² − δη² = c δ^{N−1}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{gr_lift, localized_rep_embedding, localized_zstar, minuscule_lift, LocalizedElement};
use crate::abelian_algebra::{Context, Mode};
use crate::error::{Error, Result};
use crate::lattice::{Coweight, MatterContent, RootDatum, Theory, Weight};
use crate::linalg::rref;
use crate::monopole::delta2;
use crate::symbolic::{q, qr, Poly, RatFunc, Q};

/// Which hypersurface family the branch belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `ξ² = δη² + c δ^{N−1}` with `c ≠ 0`.
    #[serde(rename = "xi^2 = delta*eta^2 + c*delta^(N-1)")]
    Generic,
    /// `ξ² = δη² + c η`, only for `SL(2)` without matter.
    #[serde(rename = "xi^2 = delta*eta^2 + c*eta")]
    Exceptional,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Generic => "xi^2 = delta*eta^2 + c*delta^(N-1)",
            Family::Exceptional => "xi^2 = delta*eta^2 + c*eta",
        }
    }
}

/// The equation of a rank-one Coulomb branch, before rescaling.
///
/// For the generic family `c` is the value of `ξ² − δη²` divided by
/// `δ^{N−1}`; for the exceptional family it is the coefficient of `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceData {
    pub family: Family,
    /// `0` marks the exceptional family.
    pub n: u32,
    pub c: Q,
    /// Δ-degrees of the generators; `deg ξ = deg η + 1`, `deg δ = 2`.
    pub deg_xi: i64,
    pub deg_eta: i64,
    pub deg_delta: i64,
}

/// Normalized generators and the residual `ξ² − δη²`.
#[derive(Clone, Debug)]
pub struct Rank1Residual {
    pub xi: LocalizedElement,
    pub eta: LocalizedElement,
    pub delta: LocalizedElement,
    pub residual: LocalizedElement,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rank1Group {
    Sl2,
    Pgl2,
}

fn classify(rd: &RootDatum) -> Result<Rank1Group> {
    if *rd == RootDatum::sl2() {
        Ok(Rank1Group::Sl2)
    } else if *rd == RootDatum::pgl2() {
        Ok(Rank1Group::Pgl2)
    } else {
        Err(Error::Invalid("rank-one analysis needs SL2 or PGL2".into()))
    }
}

/// `Σ_χ |⟨χ, λ₀⟩| dim N(χ)` for the generator `λ₀ = 1`.
fn weight_sum(matter: &MatterContent) -> i64 {
    matter
        .entries()
        .iter()
        .map(|e| i64::from(e.mult) * e.weight.0[0].abs())
        .sum()
}

fn scalar_element(ctx: &Arc<Context>, rd: &RootDatum, p: Poly) -> Result<LocalizedElement> {
    LocalizedElement::term(ctx, rd, RatFunc::from_poly(p), Coweight(vec![0]))
}

/// `c · t^e` as a rational function, for integer `e`.
fn monomial(ctx: &Arc<Context>, c: Q, e: i64) -> Result<RatFunc> {
    let t = Poly::t(ctx.space(), 0);
    let p = t.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Ok(RatFunc::from_poly(p.scale(&c)))
    } else {
        RatFunc::new(Poly::constant(ctx.space(), c), p)
    }
}

/// If `f = c · t^e`, returns `(c, e)`.
fn as_monomial(f: &RatFunc) -> Option<(Q, i64)> {
    let (num, den) = (f.numer(), f.denom());
    if num.len() != 1 || den.len() != 1 {
        return None;
    }
    let (mn, cn) = num.terms().next()?;
    let (md, cd) = den.terms().next()?;
    let only_t = |e: &[u32]| e.iter().skip(1).all(|&x| x == 0);
    if !only_t(mn.exps()) || !only_t(md.exps()) {
        return None;
    }
    Some((cn / cd, i64::from(mn.exps()[0]) - i64::from(md.exps()[0])))
}

fn square_minus(
    xi: &LocalizedElement,
    delta: &LocalizedElement,
    eta: &LocalizedElement,
) -> Result<LocalizedElement> {
    xi.mul(xi)?.sub(&delta.mul(&eta.mul(eta)?)?)
}

/// Scalars normalizing the `SL(2)` lifts so that `z*` sends `ξ` to
/// `t^{N−1}(a − s a⁻¹)` and `η` to `t^{N−2}(a + s a⁻¹)`, `s = (−1)^N`.
fn sl2_scalars(matter: &MatterContent, n: i64) -> Result<(Q, Q)> {
    let ctx = Context::new(1, matter.clone(), Mode::Classical)?;
    let rd = RootDatum::sl2();
    let s = ctx.space();
    let l = Coweight(vec![1]);
    let xi0 = localized_zstar(&gr_lift(&Poly::t(s, 0), &l, &ctx, &rd)?)?;
    let eta0 = localized_zstar(&gr_lift(&Poly::one(s), &l, &ctx, &rd)?)?;
    let lead = |x: &LocalizedElement, e: i64| -> Result<Q> {
        match as_monomial(&x.coeff(&l)) {
            Some((c, got)) if got == e => Ok(c),
            _ => Err(Error::Invariant(format!(
                "unexpected image {x} of an SL2 lift"
            ))),
        }
    };
    Ok((lead(&xi0, n - 1)?, lead(&eta0, n - 2)?))
}

/// Builds `ξ`, `η`, `δ` and `ξ² − δη²` in the localized algebra of `mode`.
pub fn rank1_residual(theory: &Theory, mode: Mode) -> Result<Rank1Residual> {
    let group = classify(&theory.rd)?;
    let rd = &theory.rd;
    let ctx = Context::new(1, theory.matter.clone(), mode)?;
    let s = ctx.space();
    let t = Poly::t(s, 0);
    let l = Coweight(vec![1]);
    let delta = scalar_element(&ctx, rd, &t * &t)?;
    let (xi, eta) = match group {
        Rank1Group::Pgl2 => (
            minuscule_lift(&t, &l, &ctx, rd)?,
            minuscule_lift(&Poly::one(s), &l, &ctx, rd)?,
        ),
        Rank1Group::Sl2 => {
            let n = weight_sum(&theory.matter) / 2;
            let xi0 = gr_lift(&t, &l, &ctx, rd)?;
            let eta0 = gr_lift(&Poly::one(s), &l, &ctx, rd)?;
            if n == 0 {
                // η = z² for z the PGL(2) class; the other square root of the
                // constant correction differs by the central sign a ↦ −a.
                let corr = LocalizedElement::term(
                    &ctx,
                    rd,
                    monomial(&ctx, qr(-1, 2), -2)?,
                    Coweight(vec![0]),
                )?;
                (xi0, eta0.add(&corr)?)
            } else {
                let (kx, ke) = sl2_scalars(&theory.matter, n)?;
                (xi0.scale(&kx.recip()), eta0.scale(&ke.recip()))
            }
        }
    };
    let residual = square_minus(&xi, &delta, &eta)?;
    Ok(Rank1Residual {
        xi,
        eta,
        delta,
        residual,
    })
}

/// Determines the rank-one Coulomb branch of `SL(2)` or `PGL(2)`.
///
/// The exponent read off from the computed residual is cross-checked
/// against the closed formula for `N` and against the Δ-degree of `η`. In
/// the quantized mode the residual must specialize at `ħ = 0` to the
/// classical one.
pub fn rank1_branch(theory: &Theory, mode: Mode) -> Result<HypersurfaceData> {
    let group = classify(&theory.rd)?;
    if mode == Mode::Flavored {
        return Err(Error::Unsupported(
            "rank-one analysis in the flavored algebra".into(),
        ));
    }
    let classical = rank1_residual(theory, Mode::Classical)?;
    if mode == Mode::Quantized {
        let quantized = rank1_residual(theory, Mode::Quantized)?;
        if quantized.residual.at_hbar_zero()? != classical.residual {
            return Err(Error::Invariant(
                "quantized residual does not specialize to the classical one".into(),
            ));
        }
    }
    let ws = weight_sum(&theory.matter);
    let n_formula = match group {
        Rank1Group::Pgl2 => ws / 2 + 1,
        Rank1Group::Sl2 => ws / 2,
    };
    let deg_eta = delta2(&Coweight(vec![1]), &theory.matter, &theory.rd) / 2;
    if deg_eta + 2 != n_formula {
        return Err(Error::Invariant(format!(
            "degree of eta ({deg_eta}) inconsistent with N = {n_formula}"
        )));
    }
    let r = &classical.residual;
    let zero = Coweight(vec![0]);
    let (family, c) = if n_formula == 0 {
        // residual must be a multiple of η
        let probe = Coweight(vec![1]);
        let ratio = r.coeff(&probe).mul(&classical.eta.coeff(&probe).inv()?);
        let c = ratio
            .as_poly()
            .filter(|p| p.is_constant())
            .map(|p| p.constant_term())
            .ok_or_else(|| Error::Invariant(format!("residual {r} is not a multiple of eta")))?;
        if classical.eta.scale(&c) != *r {
            return Err(Error::Invariant(format!(
                "residual {r} is not a multiple of eta"
            )));
        }
        (Family::Exceptional, c)
    } else {
        if r.len() != 1 {
            return Err(Error::Invariant(format!(
                "residual {r} is not a power of delta"
            )));
        }
        let (c, e) = as_monomial(&r.coeff(&zero))
            .ok_or_else(|| Error::Invariant(format!("residual {r} is not a power of delta")))?;
        if e != 2 * (n_formula - 1) || c.is_zero() {
            return Err(Error::Invariant(format!(
                "residual {r} disagrees with N = {n_formula}"
            )));
        }
        if group == Rank1Group::Pgl2 {
            let expect = pgl2_closed_form(&theory.matter);
            if c != expect {
                return Err(Error::Invariant(format!(
                    "constant {c} differs from the weight product {expect}"
                )));
            }
        }
        (Family::Generic, c)
    };
    Ok(HypersurfaceData {
        family,
        n: n_formula as u32,
        c,
        deg_xi: deg_eta + 1,
        deg_eta,
        deg_delta: 2,
    })
}

/// `4 ∏_χ ⟨χ, λ₀⟩^{|⟨χ, λ₀⟩| dim N(χ)}`, the constant of `4 r^{λ₀} r^{−λ₀}`.
fn pgl2_closed_form(matter: &MatterContent) -> Q {
    matter.entries().iter().fold(q(4), |acc, e| {
        let k = e.weight.0[0];
        let factor = num_traits::pow(q(k), (k.unsigned_abs() as usize) * e.mult as usize);
        acc * factor
    })
}

/// Outcome of [`adjoint_isomorphism_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    /// `(generator, image)` in the algebra without matter.
    pub images: Vec<(String, String)>,
    /// Common sign of the images relative to `a + a⁻¹`, `t(a − a⁻¹)`.
    pub sign: i64,
    pub relation: String,
    /// Normal forms `δ^p η^q ξ^k` (`k ≤ 1`) stay independent in this window.
    pub independent: bool,
    /// Every invariant `t^i (a^j ± a^{−j})` of the window is reached.
    pub spanning: bool,
    pub pass: bool,
}

fn is_pgl2_adjoint(theory: &Theory) -> bool {
    theory.rd == RootDatum::pgl2()
        && theory.matter
            == MatterContent::new(1, [(Weight(vec![1]), 1), (Weight(vec![-1]), 1)]).expect("valid")
}

/// Coordinates `(t-exponent, a-exponent) → coefficient` of a polynomial
/// element of the torus algebra without matter.
fn coordinates(x: &LocalizedElement) -> Result<BTreeMap<(u32, i64), Q>> {
    let mut out = BTreeMap::new();
    for (l, f) in x.terms() {
        let p = f
            .as_poly()
            .ok_or_else(|| Error::Invariant(format!("image {x} is not polynomial")))?;
        for (m, c) in p.terms() {
            out.insert((m.exps()[0], l.0[0]), c.clone());
        }
    }
    Ok(out)
}

fn rank_of(vectors: &[BTreeMap<(u32, i64), Q>]) -> usize {
    let keys: Vec<(u32, i64)> = {
        let mut k: Vec<_> = vectors.iter().flat_map(|v| v.keys().copied()).collect();
        k.sort();
        k.dedup();
        k
    };
    let mut m: Vec<Vec<Q>> = vectors
        .iter()
        .map(|v| {
            keys.iter()
                .map(|k| v.get(k).cloned().unwrap_or_else(Q::zero))
                .collect()
        })
        .collect();
    rref(&mut m).len()
}

/// For `PGL(2)` with adjoint matter, checks that `z* ι⁻¹` sends
/// `δ, η, ξ` to `t², ±(a + a⁻¹), ±t(a − a⁻¹)`, that `ξ² − δη² = −4δ`, and
/// that within `deg_t ≤ 4`, `deg_a ≤ 3` the normal forms are independent
/// and span the `W`-invariants.
pub fn adjoint_isomorphism_check(theory: &Theory) -> Result<AdjointReport> {
    if !is_pgl2_adjoint(theory) {
        return Err(Error::Invalid(
            "the adjoint check applies to PGL2 with adjoint matter only".into(),
        ));
    }
    let gens = rank1_residual(theory, Mode::Classical)?;
    let (zd, ze, zx) = (
        localized_zstar(&gens.delta)?,
        localized_zstar(&gens.eta)?,
        localized_zstar(&gens.xi)?,
    );
    let ectx = zd.ctx().clone();
    let rd = RootDatum::pgl2();
    let s = ectx.space();
    let t = Poly::t(s, 0);
    let r = |k: i64, p: Poly| {
        LocalizedElement::term(&ectx, &rd, RatFunc::from_poly(p), Coweight(vec![k]))
    };
    let eta_std = r(1, Poly::one(s))?.add(&r(-1, Poly::one(s))?)?;
    let xi_std = r(1, t.clone())?.sub(&r(-1, t.clone())?)?;
    let sign = if ze == eta_std {
        1
    } else if ze == eta_std.neg() {
        -1
    } else {
        0
    };
    let xi_ok = sign != 0 && zx == xi_std.scale(&q(sign));
    let delta_ok = zd == r(0, &t * &t)?;
    let target = gens.delta.scale(&q(-4));
    let relation_ok = gens.residual == target;

    const MAX_T: u32 = 4;
    const MAX_A: i64 = 3;
    let mut normal_forms = Vec::new();
    for p in 0..=(MAX_T / 2) {
        for k in 0..=1u32 {
            if 2 * p + k > MAX_T {
                continue;
            }
            for qe in 0..=(MAX_A as u32 - k) {
                let mut x = r(0, Poly::one(s))?;
                for _ in 0..p {
                    x = x.mul(&zd)?;
                }
                for _ in 0..qe {
                    x = x.mul(&ze)?;
                }
                if k == 1 {
                    x = x.mul(&zx)?;
                }
                normal_forms.push(coordinates(&x)?);
            }
        }
    }
    let rank = rank_of(&normal_forms);
    let independent = rank == normal_forms.len();
    let mut spanning = true;
    for i in 0..=MAX_T {
        for j in 0..=MAX_A {
            let parity: i64 = if i % 2 == 0 { 1 } else { -1 };
            if j == 0 && parity == -1 {
                continue;
            }
            let mut v = BTreeMap::new();
            v.insert((i, j), Q::one());
            if j > 0 {
                v.insert((i, -j), q(parity));
            }
            let mut with = normal_forms.clone();
            with.push(v);
            if rank_of(&with) != rank {
                spanning = false;
            }
        }
    }
    let pass = delta_ok && sign != 0 && xi_ok && relation_ok && independent && spanning;
    Ok(AdjointReport {
        images: vec![
            ("delta".into(), zd.to_string()),
            ("eta".into(), ze.to_string()),
            ("xi".into(), zx.to_string()),
        ],
        sign,
        relation: format!("xi^2 - delta*eta^2 = {}", gens.residual),
        independent,
        spanning,
        pass,
    })
}

/// Outcome of [`localization_square_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub lifts: usize,
    pub pass: bool,
}

/// For lifts `x` of `f[R_λ]`, checks that removing matter entries one at a
/// time and then the rest commutes with removing all at once, and that
/// each single removal is multiplicative on pairs of lifts.
pub fn localization_square_check(
    theory: &Theory,
    lifts: &[(Poly, Coweight)],
    mode: Mode,
) -> Result<SquareReport> {
    let ctx = Context::new(theory.rd.rank(), theory.matter.clone(), mode)?;
    let xs: Vec<LocalizedElement> = lifts
        .iter()
        .map(|(f, l)| minuscule_lift(f, l, &ctx, &theory.rd))
        .collect::<Result<_>>()?;
    let mut pass = true;
    for x in &xs {
        let all = localized_zstar(x)?;
        for i in 0..theory.matter.len() {
            if localized_zstar(&localized_rep_embedding(x, i)?)? != all {
                pass = false;
            }
        }
    }
    for x in &xs {
        for y in &xs {
            let xy = x.mul(y)?;
            for i in 0..theory.matter.len() {
                let lhs = localized_rep_embedding(&xy, i)?;
                let rhs = localized_rep_embedding(x, i)?.mul(&localized_rep_embedding(y, i)?)?;
                if lhs != rhs {
                    pass = false;
                }
            }
        }
    }
    Ok(SquareReport {
        lifts: xs.len(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theory(rd: RootDatum, weights: &[(i64, u32)]) -> Theory {
        let m = MatterContent::new(1, weights.iter().map(|&(w, k)| (Weight(vec![w]), k))).unwrap();
        Theory::new(rd, m).unwrap()
    }

    #[test]
    fn pgl2_pure() {
        let h = rank1_branch(&theory(RootDatum::pgl2(), &[]), Mode::Classical).unwrap();
        assert_eq!(h.family, Family::Generic);
        assert_eq!((h.n, h.c.clone()), (1, q(4)));
        assert_eq!((h.deg_xi, h.deg_eta, h.deg_delta), (0, -1, 2));
    }

    #[test]
    fn pgl2_adjoint() {
        let t = theory(RootDatum::pgl2(), &[(1, 1), (-1, 1)]);
        let h = rank1_branch(&t, Mode::Classical).unwrap();
        assert_eq!((h.n, h.c.clone()), (2, q(-4)));
        let res = rank1_residual(&t, Mode::Classical).unwrap();
        assert_eq!(res.residual.to_string(), "-4*t1^2");
        assert_eq!(rank1_branch(&t, Mode::Quantized).unwrap(), h);
    }

    #[test]
    fn sl2_four_fundamentals() {
        let t = theory(RootDatum::sl2(), &[(1, 4), (-1, 4)]);
        let h = rank1_branch(&t, Mode::Classical).unwrap();
        assert_eq!(h.family, Family::Generic);
        assert_eq!((h.n, h.c.clone()), (4, q(-4)));
        assert_eq!(rank1_branch(&t, Mode::Quantized).unwrap().n, 4);
    }

    #[test]
    fn sl2_normalized_images() {
        let t = theory(RootDatum::sl2(), &[(1, 3), (-1, 3)]);
        let res = rank1_residual(&t, Mode::Classical).unwrap();
        // N = 3, s = −1: ξ ↦ t²(a + a⁻¹), η ↦ t(a − a⁻¹)
        assert_eq!(
            localized_zstar(&res.xi).unwrap().to_string(),
            "t1^2*r[-1] + t1^2*r[1]"
        );
        assert_eq!(
            localized_zstar(&res.eta).unwrap().to_string(),
            "-t1*r[-1] + t1*r[1]"
        );
        let h = rank1_branch(&t, Mode::Classical).unwrap();
        assert_eq!((h.n, h.c), (3, q(4)));
    }

    #[test]
    fn sl2_pure_is_exceptional() {
        let t = theory(RootDatum::sl2(), &[]);
        let h = rank1_branch(&t, Mode::Classical).unwrap();
        assert_eq!(h.family, Family::Exceptional);
        assert_eq!((h.n, h.c), (0, q(1)));
    }

    #[test]
    fn sl2_agrees_with_pgl2_quotient_formula() {
        // N_SL = 2 N_PGL − 2 for matter that is a PGL(2) representation.
        for k in 1..4 {
            let sl = theory(RootDatum::sl2(), &[(2, k), (-2, k)]);
            let pgl = theory(RootDatum::pgl2(), &[(1, k), (-1, k)]);
            let a = rank1_branch(&sl, Mode::Classical).unwrap().n;
            let b = rank1_branch(&pgl, Mode::Classical).unwrap().n;
            assert_eq!(a, 2 * b - 2);
        }
    }

    #[test]
    fn rejects_other_groups() {
        let t = theory(RootDatum::torus(1), &[(1, 1)]);
        assert!(matches!(
            rank1_branch(&t, Mode::Classical),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn adjoint_check_passes() {
        let t = theory(RootDatum::pgl2(), &[(1, 1), (-1, 1)]);
        let rep = adjoint_isomorphism_check(&t).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(adjoint_isomorphism_check(&theory(RootDatum::pgl2(), &[])).is_err());
    }

    #[test]
    fn square_commutes() {
        let t = theory(RootDatum::pgl2(), &[(1, 2), (-1, 2), (3, 1), (-3, 1)]);
        let s = crate::symbolic::VarSpace::new(1, 0);
        let lifts = vec![
            (Poly::one(s), Coweight(vec![1])),
            (Poly::t(s, 0), Coweight(vec![1])),
            (&Poly::t(s, 0) * &Poly::t(s, 0), Coweight(vec![0])),
        ];
        let rep = localization_square_check(&t, &lifts, Mode::Classical).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.lifts, 3);
        let rep = localization_square_check(&t, &lifts, Mode::Quantized).unwrap();
        assert!(rep.pass);
    }
}
