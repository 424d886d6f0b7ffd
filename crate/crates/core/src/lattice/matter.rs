use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::linalg::primitive_up_to_sign;

/// One weight space of the matter representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatterEntry {
    pub weight: Weight,
    pub mult: u32,
}

/// The multiset of nonzero torus weights of the matter representation.
///
/// Normalization drops zero weights, merges repeated weights by adding
/// multiplicities and sorts entries by weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MatterContent {
    rank: usize,
    entries: Vec<MatterEntry>,
    dropped_zero: u32,
}

impl MatterContent {
    pub fn new(rank: usize, entries: impl IntoIterator<Item = (Weight, u32)>) -> Result<Self> {
        let mut merged: BTreeMap<Weight, u32> = BTreeMap::new();
        let mut dropped_zero = 0;
        for (w, m) in entries {
            if w.rank() != rank {
                return Err(Error::Dimension {
                    expected: rank,
                    got: w.rank(),
                });
            }
            if m == 0 {
                return Err(Error::Invalid("multiplicity must be positive".into()));
            }
            if w.is_zero() {
                dropped_zero += m;
                continue;
            }
            *merged.entry(w).or_insert(0) += m;
        }
        Ok(MatterContent {
            rank,
            entries: merged
                .into_iter()
                .map(|(weight, mult)| MatterEntry { weight, mult })
                .collect(),
            dropped_zero,
        })
    }

    pub fn empty(rank: usize) -> Self {
        MatterContent {
            rank,
            ..Default::default()
        }
    }

    /// Weights given by plain vectors, each with multiplicity one.
    pub fn from_weights(rank: usize, weights: &[&[i64]]) -> Result<Self> {
        MatterContent::new(rank, weights.iter().map(|w| (Weight(w.to_vec()), 1)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &[MatterEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of zero weights removed during normalization.
    pub fn dropped_zero_weights(&self) -> u32 {
        self.dropped_zero
    }

    pub fn dimension(&self) -> u32 {
        self.entries.iter().map(|e| e.mult).sum()
    }

    pub fn mult_of(&self, w: &Weight) -> u32 {
        self.entries
            .iter()
            .find(|e| &e.weight == w)
            .map_or(0, |e| e.mult)
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.entries.iter().position(|e| &e.weight == w)
    }

    /// The matter representation with the entry at `i` removed.
    pub fn without(&self, i: usize) -> Result<Self> {
        if i >= self.entries.len() {
            return Err(Error::Invalid(format!("matter index {i} out of range")));
        }
        let mut out = self.clone();
        out.entries.remove(i);
        Ok(out)
    }

    /// Direct sum; weights are merged.
    pub fn direct_sum(&self, other: &MatterContent) -> Result<Self> {
        MatterContent::new(
            self.rank,
            self.entries
                .iter()
                .chain(&other.entries)
                .map(|e| (e.weight.clone(), e.mult)),
        )
    }

    /// The dual representation: every weight negated.
    pub fn dual(&self) -> Self {
        MatterContent::new(
            self.rank,
            self.entries.iter().map(|e| (e.weight.neg(), e.mult)),
        )
        .expect("negation keeps weights valid")
    }

    /// Replaces the weight of entry `i` by its negative.
    pub fn flip(&self, i: usize) -> Result<Self> {
        if i >= self.entries.len() {
            return Err(Error::Invalid(format!("matter index {i} out of range")));
        }
        MatterContent::new(
            self.rank,
            self.entries.iter().enumerate().map(|(j, e)| {
                if i == j {
                    (e.weight.neg(), e.mult)
                } else {
                    (e.weight.clone(), e.mult)
                }
            }),
        )
    }

    /// Whether the multiset of weights is stable under the Weyl group.
    pub fn is_weyl_invariant(&self, rd: &RootDatum) -> bool {
        rd.weyl().generators().iter().all(|s| {
            self.entries
                .iter()
                .all(|e| self.mult_of(&Weight(s.act_weight(&e.weight.0))) == e.mult)
        })
    }
}

/// A gauge theory of cotangent type: a root datum and matter weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub rd: RootDatum,
    pub matter: MatterContent,
}

impl Theory {
    /// Validates ranks and Weyl invariance of the matter weights.
    pub fn new(rd: RootDatum, matter: MatterContent) -> Result<Self> {
        if matter.rank() != rd.rank() {
            return Err(Error::Dimension {
                expected: rd.rank(),
                got: matter.rank(),
            });
        }
        if !matter.is_weyl_invariant(&rd) {
            return Err(Error::Invalid(
                "matter weights are not invariant under the Weyl group".into(),
            ));
        }
        Ok(Theory { rd, matter })
    }

    /// `(G₁ × G₂, N₁ ⊕ N₂)`.
    pub fn product(&self, other: &Theory) -> Result<Theory> {
        let rd = self.rd.product(&other.rd)?;
        let (r1, r2) = (self.rd.rank(), other.rd.rank());
        let entries = self
            .matter
            .entries()
            .iter()
            .map(|e| {
                let mut w = e.weight.0.clone();
                w.extend(std::iter::repeat_n(0, r2));
                (Weight(w), e.mult)
            })
            .chain(other.matter.entries().iter().map(|e| {
                let mut w = vec![0; r1];
                w.extend_from_slice(&e.weight.0);
                (Weight(w), e.mult)
            }));
        Theory::new(rd, MatterContent::new(r1 + r2, entries)?)
    }
}

/// Matter weights together with all roots, without repetitions.
pub fn generalized_roots(rd: &RootDatum, matter: &MatterContent) -> Vec<Weight> {
    let mut set: std::collections::BTreeSet<Weight> =
        matter.entries().iter().map(|e| e.weight.clone()).collect();
    set.extend(rd.roots());
    set.into_iter().collect()
}

/// Distinct hyperplanes of the generalized roots, as primitive normals
/// normalized up to sign.
pub fn hyperplanes(rd: &RootDatum, matter: &MatterContent) -> Vec<Weight> {
    let set: std::collections::BTreeSet<Vec<i64>> = generalized_roots(rd, matter)
        .iter()
        .map(|w| primitive_up_to_sign(&w.0))
        .collect();
    set.into_iter().map(Weight).collect()
}

fn proportional(a: &[i64], normal: &[i64]) -> bool {
    !a.iter().all(|&x| x == 0) && primitive_up_to_sign(a) == normal
}

/// The theory `(Z_G(t), N^t)` for `t` generic on the hyperplane with normal
/// `hyperplane`: roots and matter weights proportional to the normal.
pub fn fixed_point_theory(
    rd: &RootDatum,
    matter: &MatterContent,
    hyperplane: &Weight,
) -> Result<(RootDatum, MatterContent)> {
    if hyperplane.rank() != rd.rank() {
        return Err(Error::Dimension {
            expected: rd.rank(),
            got: hyperplane.rank(),
        });
    }
    let normal = primitive_up_to_sign(&hyperplane.0);
    if !hyperplanes(rd, matter).iter().any(|h| h.0 == normal) {
        return Err(Error::Invalid(format!(
            "{hyperplane} is not a generalized-root hyperplane"
        )));
    }
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for r in rd.positive_roots() {
        if proportional(&r.root.0, &normal) {
            roots.push(r.root.clone());
            coroots.push(r.coroot.clone());
        }
    }
    let name = if roots.is_empty() {
        format!("torus({})", rd.rank())
    } else {
        format!("Z({})", rd.name().unwrap_or("G"))
    };
    let sub = RootDatum::new(rd.rank(), roots, coroots, Some(name))?;
    let kept = MatterContent::new(
        rd.rank(),
        matter
            .entries()
            .iter()
            .filter(|e| proportional(&e.weight.0, &normal))
            .map(|e| (e.weight.clone(), e.mult)),
    )?;
    Ok((sub, kept))
}
