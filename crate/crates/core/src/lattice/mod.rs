//! Root data, weight and coweight lattices, Weyl groups, matter content and
//! generalized roots.
//!
//! A root datum is given by explicit simple roots in `X = ℤ^r` and simple
//! coroots in `Y = ℤ^r`, paired by the dot product. Tori, `GL(n)`, `SL(n)`
//! and `PGL(2)` are all specified this way; presets are provided.

mod matter;
mod weyl;

pub use matter::{
    fixed_point_theory, generalized_roots, hyperplanes, MatterContent, MatterEntry, Theory,
};
pub use weyl::{WeylElement, WeylGroup};

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot};
use crate::symbolic::{q, Q};

/// Default bound on the size of an enumerated Weyl group.
pub const WEYL_CAP: usize = 10080;

macro_rules! lattice_vector {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn new(coords: Vec<i64>) -> Self {
                $name(coords)
            }

            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i] = 1;
                $name(v)
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn neg(&self) -> Self {
                $name(self.0.iter().map(|a| -a).collect())
            }

            pub fn scale(&self, k: i64) -> Self {
                $name(self.0.iter().map(|a| a * k).collect())
            }

            pub fn max_abs(&self) -> i64 {
                self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    };
}

lattice_vector!(
    Weight,
    "A character of the maximal torus, an element of `X = ℤ^r`."
);
lattice_vector!(
    Coweight,
    "A cocharacter of the maximal torus, an element of `Y = ℤ^r`."
);

/// The pairing `⟨χ, λ⟩`.
pub fn pairing(chi: &Weight, lambda: &Coweight) -> Result<i64> {
    if chi.rank() != lambda.rank() {
        return Err(Error::Dimension {
            expected: chi.rank(),
            got: lambda.rank(),
        });
    }
    Ok(dot(&chi.0, &lambda.0))
}

/// A positive root together with its coroot and its coefficients in the
/// basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub root: Weight,
    pub coroot: Coweight,
    pub simple_coeffs: Vec<i64>,
}

#[derive(Debug)]
struct Inner {
    rank: usize,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Coweight>,
    name: Option<String>,
    weyl: WeylGroup,
    positive: Vec<Root>,
}

/// A finite-type root datum. Cheap to clone.
#[derive(Clone)]
pub struct RootDatum(Arc<Inner>);

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.0.rank == other.0.rank
            && self.0.simple_roots == other.0.simple_roots
            && self.0.simple_coroots == other.0.simple_coroots
    }
}

impl Eq for RootDatum {}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("name", &self.0.name)
            .field("rank", &self.0.rank)
            .field("simple_roots", &self.0.simple_roots)
            .field("simple_coroots", &self.0.simple_coroots)
            .finish()
    }
}

impl RootDatum {
    pub fn new(
        rank: usize,
        simple_roots: Vec<Weight>,
        simple_coroots: Vec<Coweight>,
        name: Option<String>,
    ) -> Result<Self> {
        Self::with_cap(rank, simple_roots, simple_coroots, name, WEYL_CAP)
    }

    pub fn with_cap(
        rank: usize,
        simple_roots: Vec<Weight>,
        simple_coroots: Vec<Coweight>,
        name: Option<String>,
        cap: usize,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRootDatum("rank must be positive".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidRootDatum(
                "simple roots and coroots differ in number".into(),
            ));
        }
        for v in simple_roots
            .iter()
            .map(Weight::rank)
            .chain(simple_coroots.iter().map(Coweight::rank))
        {
            if v != rank {
                return Err(Error::Dimension {
                    expected: rank,
                    got: v,
                });
            }
        }
        let n = simple_roots.len();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| dot(&simple_roots[i].0, &simple_coroots[j].0))
                    .collect()
            })
            .collect();
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidRootDatum(format!(
                    "Cartan diagonal entry {i} is {}",
                    cartan[i][i]
                )));
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidRootDatum(format!(
                        "Cartan entry ({i},{j}) is not admissible"
                    )));
                }
            }
        }
        let sr: Vec<Vec<i64>> = simple_roots.iter().map(|w| w.0.clone()).collect();
        let sc: Vec<Vec<i64>> = simple_coroots.iter().map(|w| w.0.clone()).collect();
        if linalg::rank(&sr) < n {
            return Err(Error::InvalidRootDatum(
                "simple roots are linearly dependent".into(),
            ));
        }
        let weyl = WeylGroup::generate(rank, &sr, &sc, cap)?;
        let positive = positive_roots_of(&sr, &sc, &weyl);
        Ok(RootDatum(Arc::new(Inner {
            rank,
            simple_roots,
            simple_coroots,
            name,
            weyl,
            positive,
        })))
    }

    pub fn torus(rank: usize) -> Self {
        RootDatum::new(rank, vec![], vec![], Some(format!("torus({rank})"))).expect("valid torus")
    }

    pub fn sl2() -> Self {
        RootDatum::new(
            1,
            vec![Weight(vec![2])],
            vec![Coweight(vec![1])],
            Some("SL2".into()),
        )
        .expect("valid SL2")
    }

    pub fn pgl2() -> Self {
        RootDatum::new(
            1,
            vec![Weight(vec![1])],
            vec![Coweight(vec![2])],
            Some("PGL2".into()),
        )
        .expect("valid PGL2")
    }

    /// `GL(n)` with the standard diagonal torus.
    pub fn gl(n: usize) -> Self {
        let roots: Vec<Vec<i64>> = (0..n.saturating_sub(1))
            .map(|i| {
                (0..n)
                    .map(|j| i64::from(j == i) - i64::from(j == i + 1))
                    .collect()
            })
            .collect();
        RootDatum::new(
            n,
            roots.iter().cloned().map(Weight).collect(),
            roots.into_iter().map(Coweight).collect(),
            Some(format!("GL({n})")),
        )
        .expect("valid GL(n)")
    }

    /// `SL(n)` in fundamental-weight coordinates: simple roots are the rows
    /// of the Cartan matrix and simple coroots the unit vectors.
    pub fn sl(n: usize) -> Self {
        let r = n - 1;
        let roots: Vec<Weight> = (0..r)
            .map(|i| {
                Weight(
                    (0..r)
                        .map(|j| match (i as i64 - j as i64).abs() {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect(),
                )
            })
            .collect();
        let coroots = (0..r).map(|i| Coweight::unit(r, i)).collect();
        RootDatum::new(r, roots, coroots, Some(format!("SL({n})"))).expect("valid SL(n)")
    }

    pub fn a2() -> Self {
        let mut rd = RootDatum::sl(3);
        Arc::get_mut(&mut rd.0).expect("fresh").name = Some("A2".into());
        rd
    }

    /// Resolves `torus(r)`, `SL2`, `PGL2`, `GL(n)`, `SL(n)` and `A2`.
    pub fn preset(name: &str) -> Result<Self> {
        let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let arg = |prefix: &str| -> Option<usize> {
            s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
        };
        if let Some(r) = arg("torus(") {
            if r > 0 {
                return Ok(RootDatum::torus(r));
            }
        }
        if let Some(n) = arg("GL(") {
            if n > 0 {
                return Ok(RootDatum::gl(n));
            }
        }
        if let Some(n) = arg("SL(") {
            if n > 1 {
                return Ok(RootDatum::sl(n));
            }
        }
        match s.as_str() {
            "SL2" => Ok(RootDatum::sl2()),
            "PGL2" => Ok(RootDatum::pgl2()),
            "A2" | "SL3" => Ok(RootDatum::a2()),
            _ => Err(Error::Schema(format!("unknown preset {name:?}"))),
        }
    }

    /// Block-diagonal product of two root data.
    pub fn product(&self, other: &RootDatum) -> Result<Self> {
        let (r1, r2) = (self.rank(), other.rank());
        let pad_left = |v: &[i64]| -> Vec<i64> {
            let mut x = v.to_vec();
            x.extend(std::iter::repeat_n(0, r2));
            x
        };
        let pad_right = |v: &[i64]| -> Vec<i64> {
            let mut x = vec![0; r1];
            x.extend_from_slice(v);
            x
        };
        let roots = self
            .simple_roots()
            .iter()
            .map(|w| Weight(pad_left(&w.0)))
            .chain(other.simple_roots().iter().map(|w| Weight(pad_right(&w.0))))
            .collect();
        let coroots = self
            .simple_coroots()
            .iter()
            .map(|w| Coweight(pad_left(&w.0)))
            .chain(
                other
                    .simple_coroots()
                    .iter()
                    .map(|w| Coweight(pad_right(&w.0))),
            )
            .collect();
        let name = format!(
            "{}x{}",
            self.name().unwrap_or("G1"),
            other.name().unwrap_or("G2")
        );
        RootDatum::new(r1 + r2, roots, coroots, Some(name))
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.0.simple_roots.len()
    }

    pub fn is_torus(&self) -> bool {
        self.0.simple_roots.is_empty()
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.0.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Coweight] {
        &self.0.simple_coroots
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.semisimple_rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| dot(&self.0.simple_roots[i].0, &self.0.simple_coroots[j].0))
                    .collect()
            })
            .collect()
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.0.weyl
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.0.positive
    }

    /// All roots, positive ones first, then their negatives.
    pub fn roots(&self) -> Vec<Weight> {
        self.0
            .positive
            .iter()
            .map(|r| r.root.clone())
            .chain(self.0.positive.iter().map(|r| r.root.neg()))
            .collect()
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rank()];
        for r in &self.0.positive {
            for (o, &x) in out.iter_mut().zip(&r.root.0) {
                *o += q(x);
            }
        }
        out.into_iter().map(|x| x / q(2)).collect()
    }

    /// Half the sum of the positive coroots.
    pub fn rho_vee(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rank()];
        for r in &self.0.positive {
            for (o, &x) in out.iter_mut().zip(&r.coroot.0) {
                *o += q(x);
            }
        }
        out.into_iter().map(|x| x / q(2)).collect()
    }

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.0
            .simple_roots
            .iter()
            .all(|a| dot(&a.0, &lambda.0) >= 0)
    }

    fn check_rank(&self, lambda: &Coweight) -> Result<()> {
        if lambda.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.rank(),
                got: lambda.rank(),
            })
        }
    }

    /// The orbit `Wλ`, each point with a witness of shortest (then
    /// lexicographically smallest) word.
    pub fn weyl_orbit(&self, lambda: &Coweight) -> Result<Vec<(Coweight, WeylElement)>> {
        self.check_rank(lambda)?;
        Ok(self
            .weyl()
            .orbit(&lambda.0)
            .into_iter()
            .map(|(p, i)| (Coweight(p), self.weyl().element(i).clone()))
            .collect())
    }

    /// The dominant point of the orbit and a witness `w` with `wλ` dominant.
    pub fn dominant_representative(&self, lambda: &Coweight) -> Result<(Coweight, WeylElement)> {
        self.weyl_orbit(lambda)?
            .into_iter()
            .find(|(p, _)| self.is_dominant(p))
            .ok_or_else(|| Error::Invariant("orbit without dominant point".into()))
    }

    /// Elements of `W` fixing `λ`.
    pub fn stabilizer(&self, lambda: &Coweight) -> Vec<WeylElement> {
        self.weyl()
            .stabilizer(&lambda.0)
            .into_iter()
            .map(|i| self.weyl().element(i).clone())
            .collect()
    }

    /// `⟨2ρ, λ⟩ = Σ_{α>0} ⟨α, λ⟩`.
    pub fn two_rho_pairing(&self, lambda: &Coweight) -> i64 {
        self.0
            .positive
            .iter()
            .map(|r| dot(&r.root.0, &lambda.0))
            .sum()
    }

    /// Coefficients of `v` in the basis of simple coroots, if `v` lies in
    /// their rational span.
    pub fn coroot_coordinates(&self, v: &Coweight) -> Option<Vec<Q>> {
        let n = self.semisimple_rank();
        let a: Vec<Vec<Q>> = (0..self.rank())
            .map(|r| (0..n).map(|i| q(self.0.simple_coroots[i].0[r])).collect())
            .collect();
        let b: Vec<Q> = v.0.iter().map(|&x| q(x)).collect();
        linalg::solve(&a, &b)
    }

    /// `μ ≤ λ` in the dominance order: `λ − μ` is a nonnegative integer
    /// combination of simple coroots.
    pub fn dominance_le(&self, mu: &Coweight, lambda: &Coweight) -> bool {
        let d = lambda.sub(mu);
        if d.is_zero() {
            return true;
        }
        match self.coroot_coordinates(&d) {
            Some(c) => c.iter().all(linalg::is_nonneg_int),
            None => false,
        }
    }

    /// Whether the orbit `Gr^λ` of a dominant `λ` is closed: no dominant
    /// `μ < λ` exists.
    pub fn is_closed_orbit(&self, lambda: &Coweight) -> Result<bool> {
        self.check_rank(lambda)?;
        if !self.is_dominant(lambda) {
            return Err(Error::Invalid(format!("{lambda} is not dominant")));
        }
        // Σ c_i ≤ ⟨ρ, λ⟩ bounds the coefficients of λ − μ for dominant μ.
        let bound: i64 = {
            let two_rho = self.two_rho_pairing(lambda);
            two_rho / 2
        };
        let n = self.semisimple_rank();
        let mut stack: Vec<(Vec<i64>, i64, usize)> = vec![(vec![0; n], 0, 0)];
        while let Some((c, total, start)) = stack.pop() {
            if total > 0 {
                let mut mu = lambda.0.clone();
                for (i, &ci) in c.iter().enumerate() {
                    for (m, &x) in mu.iter_mut().zip(&self.0.simple_coroots[i].0) {
                        *m -= ci * x;
                    }
                }
                if self.is_dominant(&Coweight(mu)) {
                    return Ok(false);
                }
            }
            if total < bound {
                for i in start..n {
                    let mut c2 = c.clone();
                    c2[i] += 1;
                    stack.push((c2, total + 1, i));
                }
            }
        }
        Ok(true)
    }
}

fn positive_roots_of(sr: &[Vec<i64>], sc: &[Vec<i64>], weyl: &WeylGroup) -> Vec<Root> {
    let n = sr.len();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for w in weyl.elements() {
        for i in 0..n {
            let root = w.act_weight(&sr[i]);
            if !seen.insert(root.clone()) {
                continue;
            }
            let coroot = w.act_coweight(&sc[i]);
            let a: Vec<Vec<Q>> = (0..root.len())
                .map(|r| (0..n).map(|j| q(sr[j][r])).collect())
                .collect();
            let b: Vec<Q> = root.iter().map(|&x| q(x)).collect();
            let coeffs = linalg::solve(&a, &b).expect("roots lie in the root span");
            let coeffs: Vec<i64> = coeffs
                .iter()
                .map(|c| {
                    assert!(c.is_integer(), "root coefficients are integral");
                    num_traits::ToPrimitive::to_i64(&c.to_integer()).expect("small")
                })
                .collect();
            if coeffs.iter().all(|&c| c >= 0) {
                out.push(Root {
                    root: Weight(root),
                    coroot: Coweight(coroot),
                    simple_coeffs: coeffs,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        let ha: i64 = a.simple_coeffs.iter().sum();
        let hb: i64 = b.simple_coeffs.iter().sum();
        ha.cmp(&hb)
            .then_with(|| b.simple_coeffs.cmp(&a.simple_coeffs))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::qr;
    use proptest::prelude::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&Weight(vec![2]), &Coweight(vec![1])).unwrap(), 2);
        assert_eq!(
            pairing(&Weight(vec![1, -1]), &Coweight(vec![3, 1])).unwrap(),
            2
        );
        assert_eq!(pairing(&Weight(vec![0]), &Coweight(vec![5])).unwrap(), 0);
        assert!(pairing(&Weight(vec![0]), &Coweight(vec![5, 1])).is_err());
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(RootDatum::sl2().positive_roots().len(), 1);
        let a2 = RootDatum::a2();
        let roots: Vec<Vec<i64>> = a2
            .positive_roots()
            .iter()
            .map(|r| r.root.0.clone())
            .collect();
        assert_eq!(roots, vec![vec![2, -1], vec![-1, 2], vec![1, 1]]);
        assert!(RootDatum::torus(3).positive_roots().is_empty());
        assert_eq!(RootDatum::gl(4).positive_roots().len(), 6);
        assert_eq!(a2.rho(), vec![q(1), q(1)]);
        assert_eq!(RootDatum::sl2().rho(), vec![q(1)]);
        assert_eq!(RootDatum::pgl2().rho(), vec![qr(1, 2)]);
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(RootDatum::sl2().weyl().order(), 2);
        assert_eq!(RootDatum::a2().weyl().order(), 6);
        assert_eq!(RootDatum::gl(4).weyl().order(), 24);
        assert_eq!(RootDatum::torus(2).weyl().order(), 1);
    }

    #[test]
    fn rejects_bad_cartan() {
        let r = RootDatum::new(1, vec![Weight(vec![1])], vec![Coweight(vec![1])], None);
        assert!(matches!(r, Err(Error::InvalidRootDatum(_))));
        let r = RootDatum::new(
            2,
            vec![Weight(vec![2, 1]), Weight(vec![-1, 2])],
            vec![Coweight(vec![1, 0]), Coweight(vec![0, 1])],
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn affine_type_hits_cap() {
        // Cartan matrix [[2,-2],[-2,2]] is affine; its Weyl group is infinite.
        let r = RootDatum::with_cap(
            2,
            vec![Weight(vec![2, -2]), Weight(vec![-2, 2])],
            vec![Coweight(vec![1, 0]), Coweight(vec![0, 1])],
            None,
            200,
        );
        assert!(r.is_err());
    }

    #[test]
    fn pgl2_orbit_and_dominant() {
        let rd = RootDatum::pgl2();
        let orbit: Vec<Coweight> = rd
            .weyl_orbit(&Coweight(vec![1]))
            .unwrap()
            .into_iter()
            .map(|p| p.0)
            .collect();
        assert_eq!(orbit, vec![Coweight(vec![1]), Coweight(vec![-1])]);
        let (d, w) = rd.dominant_representative(&Coweight(vec![-1])).unwrap();
        assert_eq!(d, Coweight(vec![1]));
        assert_eq!(w.word, vec![0]);
        let (d, w) = rd.dominant_representative(&Coweight(vec![3])).unwrap();
        assert_eq!(d, Coweight(vec![3]));
        assert!(w.is_identity());
    }

    #[test]
    fn a2_regular_orbit_and_longest_element() {
        let rd = RootDatum::a2();
        let rho_v = Coweight(vec![1, 1]);
        assert_eq!(rd.weyl_orbit(&rho_v).unwrap().len(), 6);
        let (d, w) = rd.dominant_representative(&rho_v.neg()).unwrap();
        assert_eq!(d, rho_v);
        assert_eq!(w.length(), 3);
        assert_eq!(&w, rd.weyl().longest());
        // brute-force oracle: the unique orbit point pairing nonnegatively
        // with the Cartan rows
        let cartan = [[2i64, -1], [-1, 2]];
        let dominant: Vec<_> = rd
            .weyl_orbit(&rho_v.neg())
            .unwrap()
            .into_iter()
            .filter(|(p, _)| {
                cartan
                    .iter()
                    .all(|row| row[0] * p.0[0] + row[1] * p.0[1] >= 0)
            })
            .collect();
        assert_eq!(dominant.len(), 1);
    }

    #[test]
    fn closed_orbits() {
        let pgl = RootDatum::pgl2();
        assert!(pgl.is_closed_orbit(&Coweight(vec![1])).unwrap());
        assert!(!pgl.is_closed_orbit(&Coweight(vec![2])).unwrap());
        assert!(pgl.is_closed_orbit(&Coweight(vec![0])).unwrap());
        let sl = RootDatum::sl2();
        assert!(!sl.is_closed_orbit(&Coweight(vec![1])).unwrap());
        let gl = RootDatum::gl(3);
        assert!(gl.is_closed_orbit(&Coweight(vec![1, 0, 0])).unwrap());
        assert!(gl.is_closed_orbit(&Coweight(vec![1, 1, 1])).unwrap());
        assert!(!gl.is_closed_orbit(&Coweight(vec![2, 0, 0])).unwrap());
    }

    #[test]
    fn presets_resolve() {
        assert_eq!(RootDatum::preset("torus(3)").unwrap().rank(), 3);
        assert_eq!(RootDatum::preset("GL(2)").unwrap().weyl().order(), 2);
        assert_eq!(RootDatum::preset("A2").unwrap(), RootDatum::sl(3));
        assert!(RootDatum::preset("E9").is_err());
    }

    fn arb_rd() -> impl Strategy<Value = RootDatum> {
        prop_oneof![
            Just(RootDatum::sl2()),
            Just(RootDatum::pgl2()),
            Just(RootDatum::a2()),
            Just(RootDatum::gl(3)),
            Just(RootDatum::sl(4)),
        ]
    }

    proptest! {
        #[test]
        fn orbit_stabilizer(rd in arb_rd(), v in prop::collection::vec(-3i64..4, 3)) {
            let lambda = Coweight(v[..rd.rank()].to_vec());
            let orbit = rd.weyl_orbit(&lambda).unwrap();
            prop_assert_eq!(orbit.len() * rd.stabilizer(&lambda).len(), rd.weyl().order());
            for (p, w) in &orbit {
                prop_assert_eq!(&Coweight(w.act_coweight(&lambda.0)), p);
            }
        }

        #[test]
        fn dominant_rep_is_equivariant(rd in arb_rd(), v in prop::collection::vec(-3i64..4, 3)) {
            let lambda = Coweight(v[..rd.rank()].to_vec());
            let (d, w) = rd.dominant_representative(&lambda).unwrap();
            prop_assert!(rd.is_dominant(&d));
            prop_assert_eq!(&Coweight(w.act_coweight(&lambda.0)), &d);
            prop_assert_eq!(&rd.dominant_representative(&d).unwrap().0, &d);
            for u in rd.weyl().elements() {
                let moved = Coweight(u.act_coweight(&lambda.0));
                prop_assert_eq!(&rd.dominant_representative(&moved).unwrap().0, &d);
            }
        }

        #[test]
        fn weyl_preserves_pairing(rd in arb_rd(), a in prop::collection::vec(-3i64..4, 3), b in prop::collection::vec(-3i64..4, 3)) {
            let r = rd.rank();
            for w in rd.weyl().elements() {
                prop_assert_eq!(dot(&w.act_weight(&a[..r]), &w.act_coweight(&b[..r])), dot(&a[..r], &b[..r]));
            }
        }
    }
}
