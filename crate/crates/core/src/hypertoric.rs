//! Hypertoric Coulomb branches from exact sequences of lattices.
//!
//! A sequence `0 → ℤ^{d−n} →α ℤ^d →β ℤ^n → 0` makes `ℂ^d` a representation
//! of the torus `T^{d−n}` through `α`. Its Coulomb branch is the Hamiltonian
//! reduction of `ℂ^{2d}` by the torus dual to `β`, which is checked here at
//! the level of Hilbert series by an independent monomial count.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian_algebra::{multiply, AbelianElement, Context, Mode};
use crate::error::{Error, Result};
use crate::lattice::{Coweight, MatterContent, RootDatum, Theory, Weight};
use crate::linalg::{self, det, dot, mat_mul, transpose};
use crate::monopole::{monopole_series, MonopoleRequest};
use crate::symbolic::{q, Poly, TruncatedSeries, Q};

/// Largest degree accepted by [`reduction_oracle`].
pub const MAX_ORACLE_DEGREE: i64 = 40;

/// The maps `α: ℤ^{d−n} → ℤ^d` (a `d × (d−n)` matrix) and `β: ℤ^d → ℤ^n`
/// (an `n × d` matrix).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSequence {
    pub alpha: Vec<Vec<i64>>,
    pub beta: Vec<Vec<i64>>,
}

fn gcd_of_maximal_minors(m: &[Vec<i64>], k: usize) -> i64 {
    // minors of the k columns against every k-subset of rows
    let rows = m.len();
    let mut g: i64 = 0;
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 {
        return 1;
    }
    if k > rows {
        return 0;
    }
    loop {
        let sub: Vec<Vec<i64>> = idx.iter().map(|&i| m[i].clone()).collect();
        g = num_integer::gcd(g, det(&sub) as i64);
        let mut i = k;
        while i > 0 && idx[i - 1] == rows - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return g;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl LatticeSequence {
    /// Validates exactness of `0 → ℤ^{d−n} → ℤ^d → ℤ^n → 0`.
    pub fn new(alpha: Vec<Vec<i64>>, beta: Vec<Vec<i64>>) -> Result<Self> {
        let seq = LatticeSequence { alpha, beta };
        seq.validate()?;
        Ok(seq)
    }

    /// `α` with `β` an integral basis of its left kernel.
    pub fn from_alpha(alpha: Vec<Vec<i64>>) -> Result<Self> {
        let d = alpha.len();
        let beta = linalg::nullspace(&transpose(&alpha), d);
        LatticeSequence::new(alpha, beta)
    }

    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    /// Rank of the gauge torus, `d − n`.
    pub fn gauge_rank(&self) -> usize {
        self.alpha.first().map_or(0, Vec::len)
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.d();
        let k = self.gauge_rank();
        let bad = |msg: String| Err(Error::Invalid(format!("not an exact sequence: {msg}")));
        if d == 0 || k == 0 {
            return bad("alpha must be a nonempty d x (d-n) matrix with d - n > 0".into());
        }
        if self.alpha.iter().any(|r| r.len() != k) {
            return bad("ragged alpha".into());
        }
        if self.beta.iter().any(|r| r.len() != d) {
            return bad(format!("beta rows must have length {d}"));
        }
        if k + self.n() != d {
            return bad(format!("ranks {k} + {} differ from d = {d}", self.n()));
        }
        if self.n() > 0
            && mat_mul(&self.beta, &self.alpha)
                .iter()
                .flatten()
                .any(|&x| x != 0)
        {
            return bad("beta * alpha is not zero".into());
        }
        if gcd_of_maximal_minors(&self.alpha, k) != 1 {
            return bad("alpha is not injective with torsion-free cokernel".into());
        }
        if self.n() > 0 && gcd_of_maximal_minors(&transpose(&self.beta), self.n()) != 1 {
            return bad("beta is not surjective".into());
        }
        Ok(())
    }
}

/// The torus theory of rank `d − n` whose matter weights are the rows of `α`.
pub fn induced_theory(seq: &LatticeSequence) -> Result<Theory> {
    seq.validate()?;
    let k = seq.gauge_rank();
    let matter = MatterContent::new(k, seq.alpha.iter().map(|r| (Weight(r.clone()), 1)))?;
    Theory::new(RootDatum::torus(k), matter)
}

/// Hilbert series of the Hamiltonian reduction of `ℂ^{2d}` by the torus
/// dual to `β`: monomials `x^a y^b` with `β(a − b) = 0` counted with
/// `deg x_i = deg y_i = 1`, times `(1 − t²)^n` for the moment map equations.
pub fn reduction_oracle(seq: &LatticeSequence, max_degree: i64) -> Result<TruncatedSeries> {
    seq.validate()?;
    if max_degree > MAX_ORACLE_DEGREE {
        return Err(Error::Invalid(format!(
            "degree {max_degree} exceeds the oracle limit {MAX_ORACLE_DEGREE}"
        )));
    }
    if max_degree < 0 {
        return Err(Error::Invalid("negative degree".into()));
    }
    let n = seq.n();
    // state: (degree, β-charge) → number of monomials
    let mut states: HashMap<(i64, Vec<i64>), BigInt> = HashMap::new();
    states.insert((0, vec![0; n]), BigInt::from(1));
    for i in 0..seq.d() {
        let col: Vec<i64> = seq.beta.iter().map(|r| r[i]).collect();
        let mut next: HashMap<(i64, Vec<i64>), BigInt> = HashMap::new();
        for ((deg, charge), count) in &states {
            for a in 0..=(max_degree - deg) {
                for b in 0..=(max_degree - deg - a) {
                    let c: Vec<i64> = charge
                        .iter()
                        .zip(&col)
                        .map(|(x, y)| x + y * (a - b))
                        .collect();
                    *next.entry((deg + a + b, c)).or_default() += count;
                }
            }
        }
        states = next;
    }
    let order = 2 * max_degree;
    let mut invariants = TruncatedSeries::zero(order);
    for ((deg, charge), count) in states {
        if charge.iter().all(|&x| x == 0) {
            invariants.add_coeff(2 * deg, Q::from_integer(count));
        }
    }
    let moment = TruncatedSeries::from_pairs([(0, q(1)), (4, q(-1))], order);
    let mut out = invariants;
    for _ in 0..n {
        out = out.mul(&moment);
    }
    Ok(out)
}

/// Outcome of [`compare_with_monopole`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypertoricComparison {
    pub monopole: TruncatedSeries,
    pub oracle: TruncatedSeries,
    pub matches: bool,
}

/// Both Hilbert series up to `t^max_degree` and whether they agree.
pub fn compare_with_monopole(
    seq: &LatticeSequence,
    max_degree: i64,
) -> Result<HypertoricComparison> {
    let theory = induced_theory(seq)?;
    let monopole = monopole_series(&MonopoleRequest::new(theory, max_degree))?.series;
    let oracle = reduction_oracle(seq, max_degree)?;
    let matches = monopole == oracle;
    Ok(HypertoricComparison {
        monopole,
        oracle,
        matches,
    })
}

/// Image of `r^λ` under the dictionary: the reduced monomial with
/// exponents `c = αλ`, split as `x^{c⁺} y^{c⁻}`.
pub fn dictionary_monomial(seq: &LatticeSequence, lambda: &Coweight) -> (Vec<u32>, Vec<u32>) {
    seq.alpha
        .iter()
        .map(|row| {
            let c = dot(row, &lambda.0);
            (c.max(0) as u32, (-c).max(0) as u32)
        })
        .unzip()
}

/// Checks `r^λ r^μ = A(λ, μ) r^{λ+μ}` against multiplication of the
/// dictionary monomials for all `λ, μ` with `|·|_∞ ≤ radius`. The product
/// `x^a y^b` is reduced to `∏ (x_i y_i)^{min(a_i, b_i)}` times a reduced
/// monomial, and `x_i y_i` is identified with the form `ξ_i = (αt)_i`.
pub fn dictionary_check(seq: &LatticeSequence, radius: i64) -> Result<bool> {
    let theory = induced_theory(seq)?;
    let k = seq.gauge_rank();
    let ctx = Context::new(k, theory.matter.clone(), Mode::Classical)?;
    let s = ctx.space();
    let forms: Vec<Poly> = seq.alpha.iter().map(|r| Poly::linear_form(s, r)).collect();
    let mut pts = vec![Vec::new()];
    for _ in 0..k {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-radius..=radius).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    for l in &pts {
        for m in &pts {
            let (l, m) = (Coweight(l.clone()), Coweight(m.clone()));
            let prod = multiply(
                &AbelianElement::r(&ctx, &l.0),
                &AbelianElement::r(&ctx, &m.0),
            )?;
            let (xl, yl) = dictionary_monomial(seq, &l);
            let (xm, ym) = dictionary_monomial(seq, &m);
            let mut w = Poly::one(s);
            let mut reduced = Vec::with_capacity(seq.d());
            for i in 0..seq.d() {
                let (a, b) = (xl[i] + xm[i], yl[i] + ym[i]);
                w = &w * &forms[i].pow(a.min(b));
                reduced.push(i64::from(a) - i64::from(b));
            }
            let sum = l.add(&m);
            let target: Vec<i64> = seq.alpha.iter().map(|r| dot(r, &sum.0)).collect();
            if reduced != target {
                return Ok(false);
            }
            let expect = AbelianElement::term(&ctx, w, sum);
            if prod != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
