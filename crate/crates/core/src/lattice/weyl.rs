use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{identity, mat_mul, mat_vec};

/// An element of the Weyl group, stored through its action on both lattices.
///
/// `y_matrix` acts on coweights as column vectors, `x_matrix` on weights;
/// they are mutually contragredient. `word` is the shortest word in simple
/// reflections, lexicographically smallest among those.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub y_matrix: Vec<Vec<i64>>,
    pub x_matrix: Vec<Vec<i64>>,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            y_matrix: identity(rank),
            x_matrix: identity(rank),
            word: Vec::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn act_coweight(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.y_matrix, v)
    }

    pub fn act_weight(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.x_matrix, v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            y_matrix: mat_mul(&self.y_matrix, &other.y_matrix),
            x_matrix: mat_mul(&self.x_matrix, &other.x_matrix),
            word,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.y_matrix == identity(self.y_matrix.len())
    }
}

/// Finite Weyl group enumerated in shortlex order of reduced words.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    generators: Vec<WeylElement>,
}

impl WeylGroup {
    /// Breadth-first closure under right multiplication by simple
    /// reflections, taken in ascending order; fails past `cap` elements.
    pub(crate) fn generate(
        rank: usize,
        simple_roots: &[Vec<i64>],
        simple_coroots: &[Vec<i64>],
        cap: usize,
    ) -> Result<Self> {
        let generators: Vec<WeylElement> = simple_roots
            .iter()
            .zip(simple_coroots)
            .enumerate()
            .map(|(i, (a, c))| {
                let y = (0..rank)
                    .map(|r| (0..rank).map(|s| i64::from(r == s) - c[r] * a[s]).collect())
                    .collect();
                let x = (0..rank)
                    .map(|r| (0..rank).map(|s| i64::from(r == s) - a[r] * c[s]).collect())
                    .collect();
                WeylElement {
                    y_matrix: y,
                    x_matrix: x,
                    word: vec![i],
                }
            })
            .collect();
        let id = WeylElement::identity(rank);
        let mut index = HashMap::new();
        index.insert(id.y_matrix.clone(), 0);
        let mut elements = vec![id];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for g in &generators {
                    let u = elements[w].compose(g);
                    if index.contains_key(&u.y_matrix) {
                        continue;
                    }
                    if elements.len() >= cap {
                        return Err(Error::WeylCap(cap));
                    }
                    index.insert(u.y_matrix.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(u);
                }
            }
            frontier = next;
        }
        Ok(WeylGroup {
            elements,
            index,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    /// Canonical representative (with reduced word) of a group element.
    pub fn canonical(&self, w: &WeylElement) -> Option<&WeylElement> {
        self.index.get(&w.y_matrix).map(|&i| &self.elements[i])
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.y_matrix).copied()
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("group is nonempty")
    }

    /// The orbit of a coweight in shortlex order of the first witness.
    /// Each point is paired with the index of its witness element.
    pub fn orbit(&self, lambda: &[i64]) -> Vec<(Vec<i64>, usize)> {
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut out = Vec::new();
        for (i, w) in self.elements.iter().enumerate() {
            let p = w.act_coweight(lambda);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(p.clone()) {
                e.insert(i);
                out.push((p, i));
            }
        }
        out
    }

    /// Indices of elements fixing `lambda`.
    pub fn stabilizer(&self, lambda: &[i64]) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i].act_coweight(lambda) == lambda)
            .collect()
    }
}
