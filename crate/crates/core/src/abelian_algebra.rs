//! The Coulomb branch algebra of a torus gauge theory.
//!
//! Elements are finite sums `Σ f_λ r^λ` with polynomial coefficients written
//! to the left of `r^λ`. The product is
//!
//! ```text
//! (f r^λ)(g r^μ) = f · g(t + ħλ) · A(λ, μ) · r^{λ+μ}
//! ```
//!
//! where `A(λ, μ)` is the product of the per-weight structure factors. In the
//! classical mode the shift is trivial and the algebra is commutative.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Coweight, MatterContent, MatterEntry, Weight};
use crate::linalg::dot;
use crate::symbolic::{q, qr, Poly, VarSpace, Q};

/// Which algebra is being modelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The commutative Coulomb branch ring.
    Classical,
    /// The ħ-deformation with loop rotation.
    Quantized,
    /// Quantized, with one equivariant parameter `b_i` per matter entry.
    Flavored,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "classical" => Ok(Mode::Classical),
            "quantized" => Ok(Mode::Quantized),
            "flavored" => Ok(Mode::Flavored),
            _ => Err(Error::Schema(format!("unknown mode {s:?}"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Quantized => "quantized",
            Mode::Flavored => "flavored",
        }
    }
}

/// Rank, matter and mode shared by all elements of one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    rank: usize,
    matter: MatterContent,
    mode: Mode,
}

impl Context {
    pub fn new(rank: usize, matter: MatterContent, mode: Mode) -> Result<Arc<Self>> {
        if matter.rank() != rank {
            return Err(Error::Dimension {
                expected: rank,
                got: matter.rank(),
            });
        }
        Ok(Arc::new(Context { rank, matter, mode }))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matter(&self) -> &MatterContent {
        &self.matter
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn space(&self) -> VarSpace {
        let flavors = if self.mode == Mode::Flavored {
            self.matter.len()
        } else {
            0
        };
        VarSpace::new(self.rank, flavors)
    }

    pub fn with_mode(&self, mode: Mode) -> Arc<Self> {
        Arc::new(Context {
            rank: self.rank,
            matter: self.matter.clone(),
            mode,
        })
    }

    pub fn with_matter(&self, matter: MatterContent) -> Arc<Self> {
        Arc::new(Context {
            rank: self.rank,
            matter,
            mode: self.mode,
        })
    }

    /// The linear form `ξ_i` of matter entry `i`, plus `b_i` when flavored.
    pub fn entry_form(&self, i: usize) -> Poly {
        let s = self.space();
        let xi = Poly::linear_form(s, &self.matter.entries()[i].weight.0);
        if self.mode == Mode::Flavored {
            &xi + &Poly::flavor(s, i)
        } else {
            xi
        }
    }

    /// `2Δ(λ) = Σ_i m_i |ξ_i(λ)|`.
    pub fn delta2(&self, lambda: &Coweight) -> i64 {
        self.matter
            .entries()
            .iter()
            .map(|e| i64::from(e.mult) * dot(&e.weight.0, &lambda.0).abs())
            .sum()
    }
}

/// `0` if `k` and `l` have the same sign (zero counts as either sign),
/// `min(|k|, |l|)` otherwise.
pub fn d_of(k: i64, l: i64) -> i64 {
    if k.signum() * l.signum() >= 0 {
        0
    } else {
        k.abs().min(l.abs())
    }
}

/// The factor contributed by one matter entry with linear form `form`.
fn entry_factor(form: &Poly, k: i64, l: i64, mult: u32, mode: Mode) -> Poly {
    let d = d_of(k, l);
    let s = form.space();
    if d == 0 {
        return Poly::one(s);
    }
    let base = match mode {
        Mode::Classical => form.pow(d as u32),
        Mode::Quantized | Mode::Flavored => {
            let h = Poly::hbar(s);
            let mut acc = Poly::one(s);
            for j in 1..=d {
                let shift = if k > 0 {
                    qr(2 * (k - j) + 1, 2)
                } else {
                    qr(2 * (k + j) - 1, 2)
                };
                acc = &acc * &(form + &h.scale(&shift));
            }
            acc
        }
    };
    base.pow(mult)
}

/// `A(λ, μ)`, the coefficient of `r^{λ+μ}` in `r^λ r^μ`.
pub fn structure_factor(ctx: &Context, lambda: &Coweight, mu: &Coweight) -> Poly {
    let mut out = Poly::one(ctx.space());
    for (i, e) in ctx.matter.entries().iter().enumerate() {
        let k = dot(&e.weight.0, &lambda.0);
        let l = dot(&e.weight.0, &mu.0);
        if d_of(k, l) == 0 {
            continue;
        }
        out = &out * &entry_factor(&ctx.entry_form(i), k, l, e.mult, ctx.mode);
    }
    out
}

/// A finite sum `Σ f_λ r^λ` in a fixed context.
#[derive(Clone, PartialEq, Eq)]
pub struct AbelianElement {
    ctx: Arc<Context>,
    terms: BTreeMap<Coweight, Poly>,
}

impl AbelianElement {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        AbelianElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        AbelianElement::term(ctx, Poly::one(ctx.space()), Coweight::zero(ctx.rank))
    }

    /// `f · r^λ`.
    pub fn term(ctx: &Arc<Context>, f: Poly, lambda: Coweight) -> Self {
        let mut x = AbelianElement::zero(ctx);
        x.add_term(lambda, f);
        x
    }

    /// The monomial `r^λ`.
    pub fn r(ctx: &Arc<Context>, lambda: &[i64]) -> Self {
        AbelianElement::term(ctx, Poly::one(ctx.space()), Coweight(lambda.to_vec()))
    }

    pub fn from_poly(ctx: &Arc<Context>, f: Poly) -> Self {
        AbelianElement::term(ctx, f, Coweight::zero(ctx.rank))
    }

    /// The variable `t_i` as an element.
    pub fn t(ctx: &Arc<Context>, i: usize) -> Self {
        AbelianElement::from_poly(ctx, Poly::t(ctx.space(), i))
    }

    /// `Σ χ_j t_j` as an element.
    pub fn weight_form(ctx: &Arc<Context>, chi: &Weight) -> Self {
        AbelianElement::from_poly(ctx, Poly::linear_form(ctx.space(), &chi.0))
    }

    pub fn from_terms(
        ctx: &Arc<Context>,
        terms: impl IntoIterator<Item = (Coweight, Poly)>,
    ) -> Result<Self> {
        let mut x = AbelianElement::zero(ctx);
        for (l, f) in terms {
            if l.rank() != ctx.rank {
                return Err(Error::Dimension {
                    expected: ctx.rank,
                    got: l.rank(),
                });
            }
            if f.space() != ctx.space() {
                return Err(Error::ContextMismatch("coefficient variable space".into()));
            }
            x.add_term(l, f);
        }
        Ok(x)
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coweight, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Coweight) -> Poly {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.ctx.space()))
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

    pub(crate) fn add_term(&mut self, lambda: Coweight, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(
                "elements belong to different algebras".into(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (l, f) in &other.terms {
            out.add_term(l.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = AbelianElement::zero(&self.ctx);
        for (l, f) in &self.terms {
            out.add_term(l.clone(), f.scale(c));
        }
        out
    }

    /// Left multiplication by a polynomial.
    pub fn left_mul_poly(&self, p: &Poly) -> Self {
        let mut out = AbelianElement::zero(&self.ctx);
        for (l, f) in &self.terms {
            out.add_term(l.clone(), p * f);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        multiply(self, other)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = AbelianElement::one(&self.ctx);
        for _ in 0..e {
            acc = multiply(&acc, self)?;
        }
        Ok(acc)
    }

    /// Applies a map to each coefficient, keeping the coweights.
    pub fn map_coeffs(&self, ctx: &Arc<Context>, f: impl Fn(&Coweight, &Poly) -> Poly) -> Self {
        let mut out = AbelianElement::zero(ctx);
        for (l, p) in &self.terms {
            out.add_term(l.clone(), f(l, p));
        }
        out
    }

    /// Moves the element into another context with the same variable space.
    pub fn recontext(&self, ctx: &Arc<Context>) -> Result<Self> {
        if ctx.space() != self.ctx.space() || ctx.rank != self.ctx.rank {
            return Err(Error::ContextMismatch("variable spaces differ".into()));
        }
        Ok(AbelianElement {
            ctx: ctx.clone(),
            terms: self.terms.clone(),
        })
    }

    /// `ħ = 0` specialization into the classical algebra of the same matter.
    pub fn at_hbar_zero(&self) -> Result<Self> {
        if self.ctx.mode == Mode::Flavored {
            return Err(Error::Unsupported(
                "classical limit of the flavored algebra".into(),
            ));
        }
        let ctx = self.ctx.with_mode(Mode::Classical);
        Ok(self.map_coeffs(&ctx, |_, p| p.at_hbar_zero()))
    }

    pub fn uses_hbar(&self) -> bool {
        let h = self.ctx.space().hbar();
        self.terms.values().any(|p| p.uses_var(h))
    }

    /// Grading data of every term.
    pub fn grading(&self) -> Vec<GradingData> {
        self.terms
            .iter()
            .map(|(l, f)| grading_of(&self.ctx, l, f))
            .collect()
    }
}

/// Degrees of a single term `f r^λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingData {
    /// `2Δ(f r^λ) = 2 deg f + Σ m_i |ξ_i(λ)|`.
    pub delta2: i64,
    /// Homological degree `2 deg f + 2 d_λ` (with `deg t = 2`).
    pub homological: i64,
    /// `Σ m_i ξ_i(λ)`, so that `delta2 = homological + correction`.
    pub correction: i64,
    pub pi1_class: Coweight,
    /// Whether the coefficient is homogeneous, so the degrees are exact.
    pub homogeneous: bool,
}

fn grading_of(ctx: &Context, lambda: &Coweight, f: &Poly) -> GradingData {
    let deg = i64::from(f.degree().unwrap_or(0));
    let mut d_lambda = 0;
    let mut correction = 0;
    for e in ctx.matter.entries() {
        let k = dot(&e.weight.0, &lambda.0);
        d_lambda += i64::from(e.mult) * (-k).max(0);
        correction += i64::from(e.mult) * k;
    }
    GradingData {
        delta2: 2 * deg + ctx.delta2(lambda),
        homological: 2 * deg + 2 * d_lambda,
        correction,
        pi1_class: lambda.clone(),
        homogeneous: f.is_homogeneous(),
    }
}

/// The product in the algebra of the common context.
pub fn multiply(x: &AbelianElement, y: &AbelianElement) -> Result<AbelianElement> {
    x.check(y)?;
    let ctx = &x.ctx;
    let shifting = ctx.mode != Mode::Classical;
    let mut factors: HashMap<(&Coweight, &Coweight), Poly> = HashMap::new();
    let mut out = AbelianElement::zero(ctx);
    for (l, f) in &x.terms {
        for (m, g) in &y.terms {
            let a = factors
                .entry((l, m))
                .or_insert_with(|| structure_factor(ctx, l, m));
            let g = if shifting { g.shift(&l.0) } else { g.clone() };
            out.add_term(l.add(m), &(f * &g) * &*a);
        }
    }
    Ok(out)
}

/// `xy − yx`.
pub fn commutator(x: &AbelianElement, y: &AbelianElement) -> Result<AbelianElement> {
    multiply(x, y)?.sub(&multiply(y, x)?)
}

/// `{x, y} = ([x, y]/ħ)|_{ħ=0}` for ħ-free representatives.
///
/// Classical inputs are lifted to the quantized algebra of the same matter
/// and the result is returned in the input context.
pub fn poisson_bracket(x: &AbelianElement, y: &AbelianElement) -> Result<AbelianElement> {
    x.check(y)?;
    if x.uses_hbar() || y.uses_hbar() {
        return Err(Error::Invalid(
            "Poisson bracket inputs must be free of hbar".into(),
        ));
    }
    let source = x.ctx.clone();
    let qctx = match source.mode {
        Mode::Classical => source.with_mode(Mode::Quantized),
        _ => source.clone(),
    };
    let c = commutator(&x.recontext(&qctx)?, &y.recontext(&qctx)?)?;
    let mut out = AbelianElement::zero(&source);
    for (l, p) in &c.terms {
        let divided = p
            .div_hbar()
            .ok_or_else(|| Error::Invariant("commutator not divisible by hbar".into()))?;
        out.add_term(l.clone(), divided.at_hbar_zero());
    }
    Ok(out)
}

/// `[x, χ·1]`; for a torus this equals `Σ ħ χ(λ) f_λ r^λ`.
pub fn central_commutator_check(x: &AbelianElement, chi: &Weight) -> Result<AbelianElement> {
    if x.ctx.mode == Mode::Classical {
        return Err(Error::Invalid(
            "central commutator requires a quantized algebra".into(),
        ));
    }
    commutator(x, &AbelianElement::weight_form(&x.ctx, chi))
}

fn require_unflavored(ctx: &Context, what: &str) -> Result<()> {
    if ctx.mode == Mode::Flavored {
        Err(Error::Unsupported(format!(
            "{what} in the flavored algebra"
        )))
    } else {
        Ok(())
    }
}

fn sign_twist(
    x: &AbelianElement,
    entry: &MatterEntry,
    target_sign: i64,
    ctx: &Arc<Context>,
) -> AbelianElement {
    x.map_coeffs(ctx, |l, p| {
        let xi = target_sign * dot(&entry.weight.0, &l.0);
        if xi > 0 && (xi * i64::from(entry.mult)) % 2 == 1 {
            -p
        } else {
            p.clone()
        }
    })
}

/// The isomorphism `𝒜[T, N_i] → 𝒜[T, N]` where `N_i` carries `−ξ` in place
/// of `ξ`. The input lives in `N_i` and entry `i` is `−ξ`; the sign on
/// `r^λ` is `(−1)^{m ξ(λ)}` when `ξ(λ) > 0`.
pub fn sigma_twist(x: &AbelianElement, i: usize) -> Result<AbelianElement> {
    require_unflavored(&x.ctx, "sign twist")?;
    let entries = x.ctx.matter.entries();
    let entry = entries
        .get(i)
        .ok_or_else(|| Error::Invalid(format!("matter index {i} out of range")))?;
    if x.ctx.matter.index_of(&entry.weight.neg()).is_some() {
        return Err(Error::Unsupported(
            "sign twist of a weight whose negative is also present".into(),
        ));
    }
    let target = x.ctx.with_matter(x.ctx.matter.flip(i)?);
    Ok(sign_twist(x, entry, -1, &target))
}

/// Inverse of [`sigma_twist`]: the input lives in `N` and entry `i` is `ξ`.
pub fn sigma_twist_inverse(y: &AbelianElement, i: usize) -> Result<AbelianElement> {
    require_unflavored(&y.ctx, "sign twist")?;
    let entries = y.ctx.matter.entries();
    let entry = entries
        .get(i)
        .ok_or_else(|| Error::Invalid(format!("matter index {i} out of range")))?;
    if y.ctx.matter.index_of(&entry.weight.neg()).is_some() {
        return Err(Error::Unsupported(
            "sign twist of a weight whose negative is also present".into(),
        ));
    }
    let target = y.ctx.with_matter(y.ctx.matter.flip(i)?);
    Ok(sign_twist(y, entry, 1, &target))
}

/// The multiplier of `r^λ` under the embedding that removes one entry.
pub fn embedding_factor(
    space: VarSpace,
    entry: &MatterEntry,
    lambda: &Coweight,
    mode: Mode,
) -> Poly {
    let k = dot(&entry.weight.0, &lambda.0);
    if k >= 0 {
        return Poly::one(space);
    }
    let xi = Poly::linear_form(space, &entry.weight.0);
    let base = match mode {
        Mode::Classical => xi.pow((-k) as u32),
        Mode::Quantized | Mode::Flavored => {
            let h = Poly::hbar(space);
            let mut acc = Poly::one(space);
            for j in 0..(-k) {
                acc = &acc * &(&xi + &h.scale(&qr(2 * (k + j) + 1, 2)));
            }
            acc
        }
    };
    base.pow(entry.mult)
}

/// The embedding `𝒜[T, N ⊕ V] → 𝒜[T, N]` removing matter entry `i` (= `V`).
pub fn rep_embedding(x: &AbelianElement, i: usize) -> Result<AbelianElement> {
    require_unflavored(&x.ctx, "representation embedding")?;
    let entry = x
        .ctx
        .matter
        .entries()
        .get(i)
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("matter index {i} out of range")))?;
    let target = x.ctx.with_matter(x.ctx.matter.without(i)?);
    let space = x.ctx.space();
    let mode = x.ctx.mode;
    Ok(x.map_coeffs(&target, |l, p| {
        p * &embedding_factor(space, &entry, l, mode)
    }))
}

/// The embedding into the algebra without matter, composed over all entries.
pub fn zstar(x: &AbelianElement) -> Result<AbelianElement> {
    require_unflavored(&x.ctx, "zstar")?;
    let target = x.ctx.with_matter(MatterContent::empty(x.ctx.rank));
    let space = x.ctx.space();
    let mode = x.ctx.mode;
    let entries = x.ctx.matter.entries().to_vec();
    Ok(x.map_coeffs(&target, |l, p| {
        entries.iter().fold(p.clone(), |acc, e| {
            &acc * &embedding_factor(space, e, l, mode)
        })
    }))
}

pub(crate) fn fmt_coweight(l: &Coweight) -> String {
    let parts: Vec<String> = l.0.iter().map(|x| x.to_string()).collect();
    format!("r[{}]", parts.join(","))
}

impl fmt::Display for AbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (l, p) in &self.terms {
            let piece = if l.is_zero() {
                p.to_string()
            } else {
                let r = fmt_coweight(l);
                let ps = p.to_string();
                if ps == "1" {
                    r
                } else if ps == "-1" {
                    format!("-{r}")
                } else if p.len() == 1 {
                    format!("{ps}*{r}")
                } else {
                    format!("({ps})*{r}")
                }
            };
            pieces.push(piece);
        }
        for (i, piece) in pieces.iter().enumerate() {
            match (i, piece.strip_prefix('-')) {
                (0, _) => write!(f, "{piece}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {piece}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianElement({self})")
    }
}

/// Checks whether `x` is a scalar multiple `c · 1`; returns `c`.
pub fn as_scalar(x: &AbelianElement) -> Option<Q> {
    if x.is_zero() {
        return Some(Q::zero());
    }
    let l = Coweight::zero(x.ctx.rank);
    if x.terms.len() != 1 {
        return None;
    }
    let p = x.terms.get(&l)?;
    p.is_constant().then(|| p.constant_term())
}
