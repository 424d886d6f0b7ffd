//! Monopole-formula Hilbert series.
//!
//! The series is `Σ_λ t^{2Δ(λ)} P_G(t; λ)` over dominant coweights, where
//! `P_G(t; λ)` is the Hilbert series of `ℂ[𝔱]^{W_λ}` with `deg t_i = 2`,
//! computed as a Molien average. Summability is certified before summing:
//! `Δ` is linear on each cone cut out by simple roots and matter weights, so
//! positivity on the candidate extreme rays bounds the contributing `λ`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{hyperplanes, Coweight, MatterContent, RootDatum, Theory};
use crate::linalg::{self, dot};
use crate::symbolic::{q, TruncatedSeries, Q};

/// `d_λ = Σ_χ max(−⟨χ, λ⟩, 0) dim N(χ)`.
pub fn d_lambda(lambda: &Coweight, matter: &MatterContent) -> i64 {
    matter
        .entries()
        .iter()
        .map(|e| i64::from(e.mult) * (-dot(&e.weight.0, &lambda.0)).max(0))
        .sum()
}

/// `2Δ(λ) = −2 Σ_{α>0} |⟨α, λ⟩| + Σ_χ |⟨χ, λ⟩| dim N(χ)`.
pub fn delta2(lambda: &Coweight, matter: &MatterContent, rd: &RootDatum) -> i64 {
    let roots: i64 = rd
        .positive_roots()
        .iter()
        .map(|r| dot(&r.root.0, &lambda.0).abs())
        .sum();
    let weights: i64 = matter
        .entries()
        .iter()
        .map(|e| i64::from(e.mult) * dot(&e.weight.0, &lambda.0).abs())
        .sum();
    weights - 2 * roots
}

/// `Δ(λ)` as an exact half-integer.
pub fn delta(lambda: &Coweight, matter: &MatterContent, rd: &RootDatum) -> Q {
    q(delta2(lambda, matter, rd)) / q(2)
}

/// `Σ_χ ⟨χ, λ⟩ dim N(χ)`: twice the difference between the Δ-grading and
/// the homological grading on the component of `λ`.
pub fn homological_correction2(lambda: &Coweight, matter: &MatterContent) -> i64 {
    matter
        .entries()
        .iter()
        .map(|e| i64::from(e.mult) * dot(&e.weight.0, &lambda.0))
        .sum()
}

/// Molien series `(1/|W_λ|) Σ_{w ∈ W_λ} 1/det(1 − t² w)` up to `order`
/// (in half-units of the exponent of `t`).
pub fn levi_series(lambda: &Coweight, rd: &RootDatum, order: i64) -> Result<TruncatedSeries> {
    if lambda.rank() != rd.rank() {
        return Err(Error::Dimension {
            expected: rd.rank(),
            got: lambda.rank(),
        });
    }
    let stab = rd.stabilizer(lambda);
    let mut total = TruncatedSeries::zero(order);
    let mut by_poly: HashMap<Vec<i128>, usize> = HashMap::new();
    for w in &stab {
        *by_poly
            .entry(linalg::det_one_minus(&w.y_matrix))
            .or_insert(0) += 1;
    }
    let mut polys: Vec<_> = by_poly.into_iter().collect();
    polys.sort();
    for (coeffs, count) in polys {
        let p = TruncatedSeries::from_pairs(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (4 * k as i64, Q::from_integer(c.into()))),
            order,
        );
        total = total.add(&p.inverse()?.scale(&q(count as i64)));
    }
    Ok(total.scale(&Q::new(1.into(), (stab.len() as i64).into())))
}

/// Whether the monopole sum converges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quality {
    GoodOrUgly,
    Bad,
}

impl Quality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quality::GoodOrUgly => "good-or-ugly",
            Quality::Bad => "bad",
        }
    }
}

/// Certificate that `Δ` grows along every extreme ray of the dominant cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Growth {
    /// Candidate ray generators (a superset of the extreme rays).
    pub rays: Vec<Coweight>,
    /// Minimum of `2Δ` over the rays.
    pub min_delta2: i64,
    /// Maximum sup-norm of the rays.
    pub max_norm: i64,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Primitive generators of the one-dimensional intersections of `r − 1`
/// hyperplanes from `normals`, both signs. For rank one this is `±1`.
pub(crate) fn candidate_rays(normals: &[Vec<i64>], rank: usize) -> Vec<Vec<i64>> {
    let mut set = std::collections::BTreeSet::new();
    for s in subsets(normals.len(), rank - 1) {
        let rows: Vec<Vec<i64>> = s.iter().map(|&i| normals[i].clone()).collect();
        let ns = linalg::nullspace(&rows, rank);
        if ns.len() == 1 {
            let v = ns[0].clone();
            set.insert(v.iter().map(|x| -x).collect::<Vec<_>>());
            set.insert(v);
        }
    }
    set.into_iter().collect()
}

/// Checks that `Δ` is positive on the dominant cone minus the origin.
pub fn growth_certificate(rd: &RootDatum, matter: &MatterContent) -> Result<Growth> {
    let r = rd.rank();
    let mut normals: Vec<Vec<i64>> = rd.simple_roots().iter().map(|a| a.0.clone()).collect();
    normals.extend(
        hyperplanes(&RootDatum::torus(r), matter)
            .into_iter()
            .map(|w| w.0),
    );
    let lineality = linalg::nullspace(&normals, r);
    if let Some(v) = lineality.first() {
        return Err(Error::BadTheory(format!(
            "Δ vanishes on the line through {} in the dominant cone",
            Coweight(v.clone())
        )));
    }
    let rays: Vec<Coweight> = candidate_rays(&normals, r)
        .into_iter()
        .map(Coweight)
        .filter(|v| rd.is_dominant(v))
        .collect();
    let mut min_delta2 = i64::MAX;
    let mut max_norm = 0;
    for v in &rays {
        let d = delta2(v, matter, rd);
        if d <= 0 {
            return Err(Error::BadTheory(format!(
                "2Δ = {d} along the dominant ray {v}; the monopole sum diverges"
            )));
        }
        min_delta2 = min_delta2.min(d);
        max_norm = max_norm.max(v.max_abs());
    }
    if rays.is_empty() {
        return Err(Error::Invariant("dominant cone without rays".into()));
    }
    Ok(Growth {
        rays,
        min_delta2,
        max_norm,
    })
}

/// Classifies a theory as good-or-ugly or bad.
pub fn quality(rd: &RootDatum, matter: &MatterContent) -> Quality {
    match growth_certificate(rd, matter) {
        Ok(_) => Quality::GoodOrUgly,
        Err(_) => Quality::Bad,
    }
}

/// Input of [`monopole_series`].
#[derive(Clone, Debug)]
pub struct MonopoleRequest {
    pub theory: Theory,
    /// Largest exponent of `t` kept, in half-units (`2D` for `O(t^{D+1/2})`).
    pub order: i64,
    /// Optional integer charge per matter entry for the refined series.
    pub refinement: Option<Vec<i64>>,
}

impl MonopoleRequest {
    /// Request for all terms up to and including `t^max_degree`.
    pub fn new(theory: Theory, max_degree: i64) -> Self {
        MonopoleRequest {
            theory,
            order: 2 * max_degree,
            refinement: None,
        }
    }

    pub fn refined(mut self, charges: Vec<i64>) -> Self {
        self.refinement = Some(charges);
        self
    }
}

/// Result of [`monopole_series`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub series: TruncatedSeries,
    /// Coefficient series of each power of the fugacity `z`, if refined.
    pub refined: Option<BTreeMap<i64, TruncatedSeries>>,
    pub coweights_summed: usize,
    pub quality: Quality,
    /// Sup-norm radius of the certified enumeration box.
    pub radius: i64,
}

impl HilbertSeries {
    /// The refined series evaluated at `z = 1`.
    pub fn refined_at_one(&self) -> Option<TruncatedSeries> {
        self.refined.as_ref().map(|m| {
            m.values()
                .fold(TruncatedSeries::zero(self.series.order()), |acc, s| {
                    acc.add(s)
                })
        })
    }
}

fn refinement_character(theory: &Theory, charges: &[i64]) -> Result<Vec<i64>> {
    let entries = theory.matter.entries();
    if charges.len() != entries.len() {
        return Err(Error::Invalid(format!(
            "refinement has {} charges for {} matter entries",
            charges.len(),
            entries.len()
        )));
    }
    let mut kappa = vec![0i64; theory.rd.rank()];
    for (e, &c) in entries.iter().zip(charges) {
        for (k, &x) in kappa.iter_mut().zip(&e.weight.0) {
            *k += c * i64::from(e.mult) * x;
        }
    }
    if theory
        .rd
        .simple_coroots()
        .iter()
        .any(|c| dot(&kappa, &c.0) != 0)
    {
        return Err(Error::Invalid(
            "refinement charges do not define a character of the gauge group".into(),
        ));
    }
    Ok(kappa)
}

fn thread_pool() -> Option<rayon::ThreadPool> {
    let n: usize = std::env::var("COULOMBKIT_THREADS").ok()?.parse().ok()?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build()
        .ok()
}

/// Runs `f` inside a pool capped by `COULOMBKIT_THREADS`, if set.
pub(crate) fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match thread_pool() {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn box_points(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        let mut next = Vec::with_capacity(out.len() * (2 * radius as usize + 1));
        for p in &out {
            for x in -radius..=radius {
                let mut v = p.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The monopole formula, truncated at `req.order`.
pub fn monopole_series(req: &MonopoleRequest) -> Result<HilbertSeries> {
    if req.order <= 0 {
        return Err(Error::Invalid("truncation order must be positive".into()));
    }
    let Theory { rd, matter } = &req.theory;
    let growth = growth_certificate(rd, matter)?;
    let kappa = match &req.refinement {
        Some(c) => Some(refinement_character(&req.theory, c)?),
        None => None,
    };
    let order = req.order;
    // 2·2Δ(λ) ≤ order and 2Δ(λ) ≥ (Σ c_j)·min_delta2 for λ = Σ c_j v_j.
    let radius = (order * growth.max_norm) / (2 * growth.min_delta2);
    let rank = rd.rank();
    let simple = rd.simple_roots();
    let contributions: Vec<(Coweight, i64, u64)> = with_pool(|| {
        let mut v: Vec<(Coweight, i64, u64)> = box_points(rank, radius)
            .into_par_iter()
            .filter_map(|p| {
                let l = Coweight(p);
                if !rd.is_dominant(&l) {
                    return None;
                }
                let d2 = delta2(&l, matter, rd);
                if 2 * d2 > order {
                    return None;
                }
                let key = simple
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| dot(&a.0, &l.0) == 0)
                    .fold(0u64, |k, (i, _)| k | (1 << i));
                Some((l, d2, key))
            })
            .collect();
        v.sort();
        v
    });
    let mut levi: BTreeMap<u64, TruncatedSeries> = BTreeMap::new();
    for (l, _, key) in &contributions {
        if !levi.contains_key(key) {
            levi.insert(*key, levi_series(l, rd, order)?);
        }
    }
    let mut series = TruncatedSeries::zero(order);
    let mut refined: BTreeMap<i64, TruncatedSeries> = BTreeMap::new();
    for (l, d2, key) in &contributions {
        let term = levi[key].shift(2 * d2).truncate(order);
        series = series.add(&term);
        if let Some(k) = &kappa {
            let z = dot(k, &l.0);
            let slot = refined
                .entry(z)
                .or_insert_with(|| TruncatedSeries::zero(order));
            *slot = slot.add(&term);
        }
    }
    if !series.is_nonnegative() || series.coeff(0) != q(1) {
        return Err(Error::Invariant(format!(
            "implausible Hilbert series {series}"
        )));
    }
    refined.retain(|_, s| !s.is_zero());
    Ok(HilbertSeries {
        series,
        refined: kappa.map(|_| refined),
        coweights_summed: contributions.len(),
        quality: Quality::GoodOrUgly,
        radius,
    })
}

/// Integer coefficients of `t^0 .. t^upto` (panics on non-integers).
pub fn integer_coeffs(s: &TruncatedSeries, upto: i64) -> Vec<i64> {
    (0..=upto)
        .map(|k| {
            let c = s.coeff_t(k);
            assert!(c.is_integer(), "non-integral coefficient {c}");
            num_traits::ToPrimitive::to_i64(&c.to_integer()).expect("small coefficient")
        })
        .collect()
}

/// Whether every coefficient is zero.
pub fn is_zero_series(s: &TruncatedSeries) -> bool {
    s.iter().all(|(_, c)| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Weight;
    use proptest::prelude::*;

    fn u1(charges: &[(i64, u32)]) -> Theory {
        Theory::new(
            RootDatum::torus(1),
            MatterContent::new(1, charges.iter().map(|&(c, m)| (Weight(vec![c]), m))).unwrap(),
        )
        .unwrap()
    }

    fn sl2_fund(n: u32) -> Theory {
        Theory::new(
            RootDatum::sl2(),
            MatterContent::new(1, [(Weight(vec![1]), n), (Weight(vec![-1]), n)]).unwrap(),
        )
        .unwrap()
    }

    fn pgl2_adjoint(n: u32) -> Theory {
        Theory::new(
            RootDatum::pgl2(),
            MatterContent::new(1, [(Weight(vec![1]), n), (Weight(vec![-1]), n)]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn d_lambda_examples() {
        assert_eq!(d_lambda(&Coweight(vec![-3]), &u1(&[(1, 2)]).matter), 6);
        assert_eq!(d_lambda(&Coweight(vec![0]), &u1(&[(1, 2)]).matter), 0);
        assert_eq!(d_lambda(&Coweight(vec![1]), &sl2_fund(4).matter), 4);
    }

    #[test]
    fn delta_examples() {
        let t = u1(&[(1, 3)]);
        assert_eq!(delta(&Coweight(vec![-2]), &t.matter, &t.rd), q(3));
        let t = sl2_fund(4);
        for k in 0..5 {
            assert_eq!(delta(&Coweight(vec![k]), &t.matter, &t.rd), q(2 * k));
        }
        let t = pgl2_adjoint(1);
        assert_eq!(delta(&Coweight(vec![3]), &t.matter, &t.rd), q(0));
    }

    #[test]
    fn levi_series_examples() {
        let rd = RootDatum::torus(2);
        let s = levi_series(&Coweight(vec![0, 0]), &rd, 8).unwrap();
        assert_eq!(integer_coeffs(&s, 4), vec![1, 0, 2, 0, 3]);
        let s = levi_series(&Coweight(vec![0]), &RootDatum::sl2(), 16).unwrap();
        assert_eq!(integer_coeffs(&s, 8), vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let s = levi_series(&Coweight(vec![0, 0]), &RootDatum::a2(), 24).unwrap();
        // 1/((1−t⁴)(1−t⁶))
        assert_eq!(
            integer_coeffs(&s, 12),
            vec![1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2]
        );
        let s = levi_series(&Coweight(vec![1, 1]), &RootDatum::a2(), 8).unwrap();
        assert_eq!(integer_coeffs(&s, 4), vec![1, 0, 2, 0, 3]);
    }

    #[test]
    fn u1_two_flavors() {
        let h = monopole_series(&MonopoleRequest::new(u1(&[(1, 2)]), 8)).unwrap();
        assert_eq!(
            integer_coeffs(&h.series, 8),
            vec![1, 0, 3, 0, 5, 0, 7, 0, 9]
        );
    }

    #[test]
    fn sl2_four_fund() {
        let h = monopole_series(&MonopoleRequest::new(sl2_fund(4), 12)).unwrap();
        assert_eq!(
            integer_coeffs(&h.series, 12),
            vec![1, 0, 0, 0, 2, 0, 1, 0, 3, 0, 2, 0, 4]
        );
    }

    #[test]
    fn bad_theories() {
        let pure = Theory::new(RootDatum::pgl2(), MatterContent::empty(1)).unwrap();
        let err = monopole_series(&MonopoleRequest::new(pure, 8)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let err = monopole_series(&MonopoleRequest::new(pgl2_adjoint(1), 8)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let free = Theory::new(RootDatum::torus(1), MatterContent::empty(1)).unwrap();
        assert_eq!(quality(&free.rd, &free.matter), Quality::Bad);
        assert_eq!(
            quality(&pgl2_adjoint(2).rd, &pgl2_adjoint(2).matter),
            Quality::GoodOrUgly
        );
    }

    #[test]
    fn refined_series_sums_to_unrefined() {
        let t = u1(&[(1, 2)]);
        let h = monopole_series(&MonopoleRequest::new(t, 8).refined(vec![1])).unwrap();
        assert_eq!(h.refined_at_one().unwrap(), h.series);
        let refined = h.refined.unwrap();
        // r^k carries z^{2k}: t^2 coefficient splits as z^-2 + 1 + z^2.
        assert_eq!(refined[&2].coeff_t(2), q(1));
        assert_eq!(refined[&0].coeff_t(2), q(1));
    }

    #[test]
    fn refinement_must_be_a_character() {
        let err =
            monopole_series(&MonopoleRequest::new(sl2_fund(4), 4).refined(vec![1, 0])).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
        let ok = monopole_series(&MonopoleRequest::new(sl2_fund(4), 4).refined(vec![1, 1]));
        assert!(ok.is_ok());
    }

    #[test]
    fn zero_order_rejected() {
        assert!(monopole_series(&MonopoleRequest::new(u1(&[(1, 1)]), 0)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn delta_and_d_are_weyl_invariant(v in prop::collection::vec(-4i64..5, 3)) {
            let rd = RootDatum::gl(3);
            let matter = MatterContent::from_weights(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]).unwrap();
            let l = Coweight(v);
            for (p, _) in rd.weyl_orbit(&l).unwrap() {
                prop_assert_eq!(delta2(&p, &matter, &rd), delta2(&l, &matter, &rd));
                prop_assert_eq!(d_lambda(&p, &matter), d_lambda(&l, &matter));
                prop_assert_eq!(levi_series(&p, &rd, 8).unwrap(), levi_series(&l, &rd, 8).unwrap());
            }
        }
    }
}
