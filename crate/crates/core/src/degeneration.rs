//! The associated graded of the dominance filtration and its generators.
//!
//! In the associated graded ring the class of `f[R_λ]` multiplies as
//! `f[R_λ] · g[R_μ] = a_{λ,μ} f g [R_{λ+μ}]` with `a_{λ,μ}` the classical
//! torus structure factor. Within one chamber of the generalized-root
//! arrangement `a = 1`, so the Hilbert bases of the chambers, together with
//! the invariant polynomials, generate.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::abelian_algebra::{fmt_coweight, structure_factor, AbelianElement, Context, Mode};
use crate::abelianization::LocalizedElement;
use crate::error::{Error, Result};
use crate::lattice::{hyperplanes, Coweight, MatterContent, RootDatum, Weight};
use crate::linalg::{self, dot};
use crate::monopole::candidate_rays;
use crate::symbolic::{Poly, VarSpace};

/// Largest rank accepted by [`chamber_generators`].
pub const MAX_CHAMBER_RANK: usize = 4;

/// An element `Σ f_λ [R_λ]` of the associated graded ring.
#[derive(Clone, PartialEq, Eq)]
pub struct GrElement {
    rd: RootDatum,
    matter: MatterContent,
    terms: BTreeMap<Coweight, Poly>,
}

fn check_invariant(f: &Poly, lambda: &Coweight, rd: &RootDatum) -> Result<()> {
    for (i, a) in rd.simple_roots().iter().enumerate() {
        if dot(&a.0, &lambda.0) == 0 && f.weyl_act(&rd.weyl().generators()[i].x_matrix) != *f {
            return Err(Error::Invalid(format!(
                "coefficient {f} of R{lambda} is not invariant under the stabilizer"
            )));
        }
    }
    Ok(())
}

impl GrElement {
    pub fn zero(rd: &RootDatum, matter: &MatterContent) -> Result<Self> {
        if matter.rank() != rd.rank() {
            return Err(Error::Dimension {
                expected: rd.rank(),
                got: matter.rank(),
            });
        }
        Ok(GrElement {
            rd: rd.clone(),
            matter: matter.clone(),
            terms: BTreeMap::new(),
        })
    }

    /// The classical coefficient space: `t_1..t_r` and an unused `hbar`.
    pub fn space(&self) -> VarSpace {
        VarSpace::new(self.rd.rank(), 0)
    }

    /// `f [R_λ]` for dominant `λ` and `W_λ`-invariant `f`.
    pub fn term(rd: &RootDatum, matter: &MatterContent, f: Poly, lambda: Coweight) -> Result<Self> {
        let mut x = GrElement::zero(rd, matter)?;
        x.add_checked(lambda, f)?;
        Ok(x)
    }

    /// `[R_λ]`.
    pub fn class(rd: &RootDatum, matter: &MatterContent, lambda: &[i64]) -> Result<Self> {
        GrElement::term(
            rd,
            matter,
            Poly::one(VarSpace::new(rd.rank(), 0)),
            Coweight(lambda.to_vec()),
        )
    }

    fn add_checked(&mut self, lambda: Coweight, f: Poly) -> Result<()> {
        if lambda.rank() != self.rd.rank() {
            return Err(Error::Dimension {
                expected: self.rd.rank(),
                got: lambda.rank(),
            });
        }
        if f.space() != self.space() {
            return Err(Error::ContextMismatch("coefficient variable space".into()));
        }
        if f.uses_var(self.space().hbar()) {
            return Err(Error::Invalid(
                "associated graded coefficients are classical".into(),
            ));
        }
        if !self.rd.is_dominant(&lambda) {
            return Err(Error::Invalid(format!("{lambda} is not dominant")));
        }
        check_invariant(&f, &lambda, &self.rd)?;
        self.add_term(lambda, f);
        Ok(())
    }

    fn add_term(&mut self, lambda: Coweight, f: Poly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&lambda) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(lambda, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coweight, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Coweight) -> Poly {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.space()))
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

    fn check(&self, other: &Self) -> Result<()> {
        if self.rd == other.rd && self.matter == other.matter {
            Ok(())
        } else {
            Err(Error::ContextMismatch(
                "graded elements of different theories".into(),
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

    pub fn mul(&self, other: &Self) -> Result<Self> {
        gr_multiply(self, other)
    }
}

/// `a_{λ,μ} = ∏_i ξ_i^{m_i d(ξ_i(λ), ξ_i(μ))}` for dominant `λ`, `μ`.
pub fn a_factor(
    rd: &RootDatum,
    matter: &MatterContent,
    lambda: &Coweight,
    mu: &Coweight,
) -> Result<Poly> {
    let ctx = Context::new(rd.rank(), matter.clone(), Mode::Classical)?;
    Ok(structure_factor(&ctx, lambda, mu))
}

/// `f[R_λ] · g[R_μ] = a_{λ,μ} f g [R_{λ+μ}]`, extended bilinearly.
pub fn gr_multiply(x: &GrElement, y: &GrElement) -> Result<GrElement> {
    x.check(y)?;
    let ctx = Context::new(x.rd.rank(), x.matter.clone(), Mode::Classical)?;
    let mut out = GrElement::zero(&x.rd, &x.matter)?;
    for (l, f) in &x.terms {
        for (m, g) in &y.terms {
            let a = structure_factor(&ctx, l, m);
            let c = &(f * g) * &a;
            let sum = l.add(m);
            check_invariant(&c, &sum, &x.rd)
                .map_err(|e| Error::Invariant(format!("product leaves the invariants: {e}")))?;
            out.add_term(sum, c);
        }
    }
    Ok(out)
}

/// Classical Euler class `∏_{α>0} α^{⟨α, λ⟩}` at a dominant `λ`.
fn euler_class(rd: &RootDatum, lambda: &Coweight, space: VarSpace) -> Poly {
    rd.positive_roots().iter().fold(Poly::one(space), |acc, r| {
        let k = dot(&r.root.0, &lambda.0);
        &acc * &Poly::linear_form(space, &r.root.0).pow(k as u32)
    })
}

/// The top filtration part of a localized element: for every dominant class
/// maximal in the support under the dominance order, the coefficient of
/// `r^λ` times the Euler class at `λ`. Incomparable maxima are all kept.
pub fn leading_term(x: &LocalizedElement) -> Result<GrElement> {
    let x = if x.ctx().mode() == Mode::Classical {
        x.clone()
    } else {
        x.at_hbar_zero()?
    };
    let rd = x.root_datum().clone();
    let matter = x.ctx().matter().clone();
    let mut classes: BTreeMap<Coweight, bool> = BTreeMap::new();
    for (l, _) in x.terms() {
        let (d, _) = rd.dominant_representative(l)?;
        let at_dominant = d == *l;
        let seen = classes.entry(d).or_insert(false);
        *seen |= at_dominant;
    }
    let keys: Vec<Coweight> = classes.keys().cloned().collect();
    let mut out = GrElement::zero(&rd, &matter)?;
    let space = out.space();
    for l in &keys {
        if keys.iter().any(|m| m != l && rd.dominance_le(l, m)) {
            continue;
        }
        if !classes[l] {
            return Err(Error::Invalid(format!(
                "maximal class {l} appears without its dominant monomial"
            )));
        }
        let c = x.coeff(l).mul_poly(&euler_class(&rd, l, space));
        let f = c.as_poly().ok_or_else(|| {
            Error::Invalid(format!("leading coefficient {c} of R{l} is not polynomial"))
        })?;
        out.add_checked(l.clone(), f)?;
    }
    Ok(out)
}

/// [`leading_term`] for an element of a torus-type algebra viewed inside
/// the localized algebra of `rd`.
pub fn leading_term_abelian(x: &AbelianElement, rd: &RootDatum) -> Result<GrElement> {
    leading_term(&LocalizedElement::from_abelian(x, rd)?)
}

impl fmt::Display for GrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (l, p) in &self.terms {
            let class = format!("[{}]", fmt_coweight(l).replacen('r', "R", 1));
            let ps = p.to_string();
            pieces.push(if ps == "1" {
                class
            } else if ps == "-1" {
                format!("-{class}")
            } else if p.len() == 1 {
                format!("{ps}*{class}")
            } else {
                format!("({ps})*{class}")
            });
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

impl fmt::Debug for GrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrElement({self})")
    }
}

/// One full-dimensional chamber of the arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    /// Sign of each normal on the chamber interior.
    pub signs: Vec<i8>,
    /// Extreme rays of the closed chamber.
    pub rays: Vec<Coweight>,
    /// Hilbert basis of the chamber's lattice points.
    pub generators: Vec<Coweight>,
}

impl Chamber {
    fn contains(&self, normals: &[Weight], v: &[i64]) -> bool {
        normals
            .iter()
            .zip(&self.signs)
            .all(|(n, &s)| i64::from(s) * dot(&n.0, v) >= 0)
    }

    fn height(&self, normals: &[Weight], v: &[i64]) -> i64 {
        normals
            .iter()
            .zip(&self.signs)
            .map(|(n, &s)| i64::from(s) * dot(&n.0, v))
            .sum()
    }
}

/// The chambers of the generalized-root arrangement on `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberDecomposition {
    pub rank: usize,
    /// Hyperplane normals; coordinate hyperplanes are added when the
    /// generalized roots do not span, so that every chamber is pointed.
    pub normals: Vec<Weight>,
    pub chambers: Vec<Chamber>,
    /// Radius up to which the generators were re-verified to generate.
    pub verified_radius: i64,
}

fn box_points(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn sign_vectors(normals: &[Weight], rays: &[Vec<i64>]) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    let mut cur: Vec<i8> = Vec::new();
    fn feasible(normals: &[Weight], rays: &[Vec<i64>], signs: &[i8]) -> bool {
        let inside: Vec<&Vec<i64>> = rays
            .iter()
            .filter(|v| {
                normals
                    .iter()
                    .zip(signs)
                    .all(|(n, &s)| i64::from(s) * dot(&n.0, v) >= 0)
            })
            .collect();
        if inside.is_empty() {
            return false;
        }
        let rank = rays[0].len();
        let mut p = vec![0i64; rank];
        for v in inside {
            for (a, b) in p.iter_mut().zip(v) {
                *a += b;
            }
        }
        normals
            .iter()
            .zip(signs)
            .all(|(n, &s)| i64::from(s) * dot(&n.0, &p) > 0)
    }
    fn rec(normals: &[Weight], rays: &[Vec<i64>], cur: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if cur.len() == normals.len() {
            out.push(cur.clone());
            return;
        }
        for s in [1i8, -1] {
            cur.push(s);
            if feasible(&normals[..cur.len()], rays, cur) {
                rec(normals, rays, cur, out);
            }
            cur.pop();
        }
    }
    rec(normals, rays, &mut cur, &mut out);
    out
}

/// Hilbert basis of a pointed chamber: irreducible lattice points in the
/// box bounded by the sum of the ray norms, in increasing height.
fn hilbert_basis(chamber: &Chamber, normals: &[Weight], rank: usize) -> Vec<Coweight> {
    let bound: i64 = chamber.rays.iter().map(Coweight::max_abs).sum();
    let mut pts: Vec<(i64, Vec<i64>)> = box_points(rank, bound)
        .into_iter()
        .filter(|p| p.iter().any(|&x| x != 0) && chamber.contains(normals, p))
        .map(|p| (chamber.height(normals, &p), p))
        .collect();
    pts.sort();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for (_, p) in pts {
        let reducible = basis.iter().any(|h| {
            let d: Vec<i64> = p.iter().zip(h).map(|(a, b)| a - b).collect();
            chamber.contains(normals, &d)
        });
        if !reducible {
            basis.push(p);
        }
    }
    basis.into_iter().map(Coweight).collect()
}

/// Checks that every lattice point of the chamber within `radius` is a
/// nonnegative integer combination of the generators.
fn saturation_check(chamber: &Chamber, normals: &[Weight], rank: usize, radius: i64) -> bool {
    let mut pts: Vec<(i64, Vec<i64>)> = box_points(rank, radius)
        .into_iter()
        .filter(|p| chamber.contains(normals, p))
        .map(|p| (chamber.height(normals, &p), p))
        .collect();
    pts.sort();
    let mut reachable: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    for (_, p) in pts {
        let ok = p.iter().all(|&x| x == 0)
            || chamber.generators.iter().any(|g| {
                let d: Vec<i64> = p.iter().zip(&g.0).map(|(a, b)| a - b).collect();
                reachable.contains(&d) || d.iter().all(|&x| x == 0)
            });
        if !ok {
            return false;
        }
        reachable.insert(p);
    }
    true
}

/// Chambers of the generalized-root arrangement with their Hilbert bases.
pub fn chamber_generators(rd: &RootDatum, matter: &MatterContent) -> Result<ChamberDecomposition> {
    let rank = rd.rank();
    if rank > MAX_CHAMBER_RANK {
        return Err(Error::Unsupported(format!(
            "chamber enumeration is limited to rank {MAX_CHAMBER_RANK}"
        )));
    }
    let mut normals = hyperplanes(rd, matter);
    let as_rows = |ns: &[Weight]| ns.iter().map(|w| w.0.clone()).collect::<Vec<_>>();
    if linalg::rank(&as_rows(&normals)) < rank {
        for i in 0..rank {
            let e = Weight::unit(rank, i);
            if !normals.contains(&e) {
                normals.push(e);
            }
        }
    }
    let rays = candidate_rays(&as_rows(&normals), rank);
    let signs = sign_vectors(&normals, &rays);
    let mut chambers: Vec<Chamber> = signs
        .into_par_iter()
        .map(|s| {
            let mut ch = Chamber {
                rays: rays
                    .iter()
                    .filter(|v| {
                        normals
                            .iter()
                            .zip(&s)
                            .all(|(n, &x)| i64::from(x) * dot(&n.0, v) >= 0)
                    })
                    .cloned()
                    .map(Coweight)
                    .collect(),
                signs: s,
                generators: Vec::new(),
            };
            ch.generators = hilbert_basis(&ch, &normals, rank);
            ch
        })
        .collect();
    chambers.sort_by(|a, b| b.signs.cmp(&a.signs));
    let verified_radius = 3;
    for ch in &chambers {
        if !saturation_check(ch, &normals, rank, verified_radius) {
            return Err(Error::Invariant(format!(
                "generators {:?} do not generate their chamber",
                ch.generators
            )));
        }
    }
    Ok(ChamberDecomposition {
        rank,
        normals,
        chambers,
        verified_radius,
    })
}

/// Writes `λ` as a sum of generators of one chamber, if possible.
fn decompose(chamber: &Chamber, normals: &[Weight], lambda: &[i64]) -> Option<Vec<Coweight>> {
    if lambda.iter().all(|&x| x == 0) {
        return Some(Vec::new());
    }
    for g in &chamber.generators {
        let d: Vec<i64> = lambda.iter().zip(&g.0).map(|(a, b)| a - b).collect();
        if chamber.contains(normals, &d) {
            if let Some(mut rest) = decompose(chamber, normals, &d) {
                rest.push(g.clone());
                return Some(rest);
            }
        }
    }
    None
}

/// Outcome of [`generation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub classes_checked: usize,
    /// Classes not obtained as products of chamber generators.
    pub failures: Vec<Coweight>,
}

/// For every dominant `λ` with `|λ|_∞ ≤ radius`, finds a chamber inside the
/// dominant cone containing `λ`, writes `λ` over its generators and checks
/// that the product of the generator classes is exactly `[R_λ]`.
pub fn generation_check(
    rd: &RootDatum,
    matter: &MatterContent,
    radius: i64,
) -> Result<GenerationReport> {
    let dec = chamber_generators(rd, matter)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for p in box_points(rd.rank(), radius) {
        let l = Coweight(p);
        if !rd.is_dominant(&l) {
            continue;
        }
        checked += 1;
        let found = dec.chambers.iter().find_map(|ch| {
            let dominant_chamber = ch.rays.iter().all(|v| rd.is_dominant(v));
            if dominant_chamber && ch.contains(&dec.normals, &l.0) {
                decompose(ch, &dec.normals, &l.0)
            } else {
                None
            }
        });
        let ok = match found {
            Some(parts) => {
                let mut prod = GrElement::class(rd, matter, &vec![0; rd.rank()])?;
                for g in &parts {
                    prod = gr_multiply(&prod, &GrElement::class(rd, matter, &g.0)?)?;
                }
                prod == GrElement::class(rd, matter, &l.0)?
            }
            None => false,
        };
        if !ok {
            failures.push(l);
        }
    }
    Ok(GenerationReport {
        classes_checked: checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelianization::{gr_lift, minuscule_lift, rank1_residual};
    use crate::lattice::Theory;
    use crate::symbolic::q;
    use proptest::prelude::*;

    fn m1(ws: &[(i64, u32)]) -> MatterContent {
        MatterContent::new(1, ws.iter().map(|&(w, k)| (Weight(vec![w]), k))).unwrap()
    }

    /// Brute-force Hilbert basis oracle: points of the closed cone up to
    /// `radius` that are not sums of two nonzero such points.
    fn brute_basis(ch: &Chamber, normals: &[Weight], rank: usize, radius: i64) -> Vec<Coweight> {
        let pts: Vec<Vec<i64>> = box_points(rank, radius)
            .into_iter()
            .filter(|p| p.iter().any(|&x| x != 0) && ch.contains(normals, p))
            .collect();
        let set: std::collections::HashSet<_> = pts.iter().cloned().collect();
        let mut out: Vec<Coweight> = pts
            .iter()
            .filter(|p| {
                !pts.iter().any(|a| {
                    let b: Vec<i64> = p.iter().zip(a).map(|(x, y)| x - y).collect();
                    b.iter().any(|&x| x != 0) && set.contains(&b)
                })
            })
            .cloned()
            .map(Coweight)
            .collect();
        out.sort();
        out
    }

    #[test]
    fn rank_one_chambers() {
        let dec = chamber_generators(&RootDatum::torus(1), &m1(&[(1, 1)])).unwrap();
        let gens: Vec<_> = dec.chambers.iter().map(|c| c.generators.clone()).collect();
        assert_eq!(
            gens,
            vec![vec![Coweight(vec![1])], vec![Coweight(vec![-1])]]
        );
    }

    #[test]
    fn quadrants() {
        let matter = MatterContent::from_weights(2, &[&[1, 0], &[0, 1]]).unwrap();
        let dec = chamber_generators(&RootDatum::torus(2), &matter).unwrap();
        assert_eq!(dec.chambers.len(), 4);
        for ch in &dec.chambers {
            assert_eq!(ch.generators.len(), 2);
            assert!(ch
                .generators
                .iter()
                .all(|g| g.max_abs() == 1 && g.0.iter().filter(|&&x| x != 0).count() == 1));
        }
    }

    #[test]
    fn diagonal_arrangement_matches_brute_force() {
        let matter = MatterContent::from_weights(2, &[&[1, 1], &[1, -1]]).unwrap();
        let dec = chamber_generators(&RootDatum::torus(2), &matter).unwrap();
        assert_eq!(dec.chambers.len(), 4);
        let mut seen_interior = false;
        for ch in &dec.chambers {
            let mut g = ch.generators.clone();
            g.sort();
            assert_eq!(g, brute_basis(ch, &dec.normals, 2, 3));
            seen_interior |= g.contains(&Coweight(vec![1, 0]));
        }
        assert!(seen_interior);
    }

    #[test]
    fn non_spanning_arrangement_is_refined() {
        let matter = MatterContent::from_weights(2, &[&[1, 0]]).unwrap();
        let dec = chamber_generators(&RootDatum::torus(2), &matter).unwrap();
        assert_eq!(dec.normals.len(), 2);
        assert_eq!(dec.chambers.len(), 4);
    }

    #[test]
    fn rank_limit() {
        let rd = RootDatum::torus(5);
        assert!(matches!(
            chamber_generators(&rd, &MatterContent::empty(5)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn gr_products_in_one_chamber() {
        let rd = RootDatum::pgl2();
        let matter = m1(&[(1, 4), (-1, 4)]);
        let r1 = GrElement::class(&rd, &matter, &[1]).unwrap();
        assert_eq!(
            gr_multiply(&r1, &r1).unwrap(),
            GrElement::class(&rd, &matter, &[2]).unwrap()
        );
        assert_eq!(
            a_factor(&rd, &matter, &Coweight(vec![1]), &Coweight(vec![1]))
                .unwrap()
                .to_string(),
            "1"
        );
        let torus = RootDatum::torus(1);
        let u = m1(&[(1, 1)]);
        let p = GrElement::class(&torus, &u, &[1]).unwrap();
        let n = GrElement::class(&torus, &u, &[-1]).unwrap();
        assert_eq!(gr_multiply(&p, &n).unwrap().to_string(), "t1*[R[0]]");
    }

    #[test]
    fn invariance_is_enforced() {
        let rd = RootDatum::pgl2();
        let s = VarSpace::new(1, 0);
        assert!(GrElement::term(
            &rd,
            &MatterContent::empty(1),
            Poly::t(s, 0),
            Coweight(vec![0])
        )
        .is_err());
        assert!(GrElement::term(
            &rd,
            &MatterContent::empty(1),
            Poly::t(s, 0),
            Coweight(vec![1])
        )
        .is_ok());
        assert!(GrElement::term(
            &rd,
            &MatterContent::empty(1),
            Poly::one(s),
            Coweight(vec![-1])
        )
        .is_err());
    }

    #[test]
    fn leading_term_examples() {
        let rd = RootDatum::pgl2();
        let ctx = Context::new(1, MatterContent::empty(1), Mode::Classical).unwrap();
        let s = ctx.space();
        let x = AbelianElement::from_terms(
            &ctx,
            [
                (Coweight(vec![2]), Poly::one(s)),
                (Coweight(vec![0]), &Poly::t(s, 0) * &Poly::t(s, 0)),
            ],
        )
        .unwrap();
        let lt = leading_term_abelian(&x, &rd).unwrap();
        assert_eq!(lt.len(), 1);
        assert_eq!(lt.to_string(), "t1^2*[R[2]]");
        let single = AbelianElement::from_poly(&ctx, Poly::t(s, 0).pow(2));
        assert_eq!(
            leading_term_abelian(&single, &rd).unwrap().to_string(),
            "t1^2*[R[0]]"
        );
    }

    #[test]
    fn leading_term_of_lift_products() {
        let rd = RootDatum::pgl2();
        for matter in [
            m1(&[]),
            m1(&[(1, 1), (-1, 1)]),
            m1(&[(1, 2), (-1, 2), (3, 1), (-3, 1)]),
        ] {
            let ctx = Context::new(1, matter.clone(), Mode::Classical).unwrap();
            let s = ctx.space();
            let t = Poly::t(s, 0);
            let lifts = [
                minuscule_lift(&Poly::one(s), &Coweight(vec![1]), &ctx, &rd).unwrap(),
                minuscule_lift(&t, &Coweight(vec![1]), &ctx, &rd).unwrap(),
                minuscule_lift(&(&t * &t), &Coweight(vec![0]), &ctx, &rd).unwrap(),
            ];
            for x in &lifts {
                for y in &lifts {
                    let lhs = leading_term(&x.mul(y).unwrap()).unwrap();
                    let rhs =
                        gr_multiply(&leading_term(x).unwrap(), &leading_term(y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn sl2_relation_head() {
        let t = Theory::new(RootDatum::sl2(), m1(&[(1, 4), (-1, 4)])).unwrap();
        let res = rank1_residual(&t, Mode::Classical).unwrap();
        let xi2 = leading_term(&res.xi.mul(&res.xi).unwrap()).unwrap();
        let de2 = leading_term(&res.delta.mul(&res.eta.mul(&res.eta).unwrap()).unwrap()).unwrap();
        assert_eq!(xi2, de2);
        let ctx = res.xi.ctx().clone();
        let g = gr_lift(&Poly::one(ctx.space()), &Coweight(vec![1]), &ctx, &t.rd).unwrap();
        let lt = leading_term(&g).unwrap();
        assert_eq!(
            gr_multiply(&lt, &lt).unwrap(),
            leading_term(&g.mul(&g).unwrap()).unwrap()
        );
        assert_eq!(lt.coeff(&Coweight(vec![1])).constant_term(), q(1));
    }

    #[test]
    fn generation_in_test_theories() {
        let cases: Vec<(RootDatum, MatterContent)> = vec![
            (RootDatum::torus(1), m1(&[(1, 2)])),
            (RootDatum::pgl2(), m1(&[(1, 2), (-1, 2)])),
            (RootDatum::sl2(), m1(&[(1, 4), (-1, 4)])),
            (
                RootDatum::torus(2),
                MatterContent::from_weights(2, &[&[1, 1], &[1, -1]]).unwrap(),
            ),
            (
                RootDatum::gl(2),
                MatterContent::from_weights(2, &[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]).unwrap(),
            ),
        ];
        for (rd, matter) in cases {
            let rep = generation_check(&rd, &matter, 3).unwrap();
            assert!(rep.failures.is_empty(), "{:?}", rep.failures);
            assert!(rep.classes_checked > 0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn gr_product_is_commutative_associative(a in 0i64..4, b in 0i64..4, c in 0i64..4, e in 0u32..3) {
            let rd = RootDatum::gl(2);
            let matter = MatterContent::from_weights(2, &[&[1, 0], &[0, 1], &[1, -1]]).unwrap();
            let matter = matter.direct_sum(&MatterContent::from_weights(2, &[&[-1, 1]]).unwrap()).unwrap();
            let s = VarSpace::new(2, 0);
            let sym = (&Poly::t(s, 0) + &Poly::t(s, 1)).pow(e);
            let x = GrElement::term(&rd, &matter, sym, Coweight(vec![a, 0])).unwrap();
            let y = GrElement::class(&rd, &matter, &[b, b]).unwrap();
            let z = GrElement::class(&rd, &matter, &[c, -1]).unwrap();
            prop_assert_eq!(gr_multiply(&x, &y).unwrap(), gr_multiply(&y, &x).unwrap());
            let l = gr_multiply(&gr_multiply(&x, &y).unwrap(), &z).unwrap();
            let r = gr_multiply(&x, &gr_multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
