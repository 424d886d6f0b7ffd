//! Seeded samplers for theories and algebra elements.
//!
//! All sampling goes through [`ChaCha8Rng`], so a seed fixes every case.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian_algebra::{AbelianElement, Context, Mode};
use crate::lattice::{Coweight, MatterContent, Weight};
use crate::symbolic::{qr, Monomial, Poly, VarSpace};

/// Size limits of sampled objects. Coordinate bounds apply in rank one;
/// higher ranks use coordinates in `{-1, 0, 1}` to keep degrees small.
#[derive(Clone, Copy, Debug)]
pub struct SampleBounds {
    pub max_entries: usize,
    pub weight_bound: i64,
    pub max_mult: u32,
    pub max_terms: usize,
    pub coweight_bound: i64,
    pub max_monomials: usize,
    pub max_degree: u32,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_entries: 3,
            weight_bound: 2,
            max_mult: 2,
            max_terms: 2,
            coweight_bound: 2,
            max_monomials: 2,
            max_degree: 1,
        }
    }
}

fn scaled(bound: i64, rank: usize) -> i64 {
    if rank == 1 {
        bound
    } else {
        bound.min(1)
    }
}

/// A deterministic sampler.
pub struct Sampler {
    rng: ChaCha8Rng,
    pub bounds: SampleBounds,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds: SampleBounds::default(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn nonzero_vector(&mut self, rank: usize, bound: i64) -> Vec<i64> {
        loop {
            let v: Vec<i64> = (0..rank)
                .map(|_| self.rng.gen_range(-bound..=bound))
                .collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }

    /// Random torus matter with between one and `max_entries` entries.
    pub fn matter(&mut self, rank: usize) -> MatterContent {
        let k = self.rng.gen_range(1..=self.bounds.max_entries);
        let entries: Vec<(Weight, u32)> = (0..k)
            .map(|_| {
                let w = self.nonzero_vector(rank, scaled(self.bounds.weight_bound, rank));
                (Weight(w), self.rng.gen_range(1..=self.bounds.max_mult))
            })
            .collect();
        MatterContent::new(rank, entries).expect("sampled weights have the right rank")
    }

    /// Torus matter in which no weight appears together with its negative.
    pub fn chiral_matter(&mut self, rank: usize) -> MatterContent {
        loop {
            let m = self.matter(rank);
            if m.entries()
                .iter()
                .all(|e| m.index_of(&e.weight.neg()).is_none())
            {
                return m;
            }
        }
    }

    pub fn context(&mut self, rank: usize, mode: Mode) -> Arc<Context> {
        let m = self.matter(rank);
        Context::new(rank, m, mode).expect("ranks agree")
    }

    /// A polynomial with small rational coefficients in the variables that
    /// the mode allows: `t_i`, plus `ħ` when quantized, plus `b_i` when
    /// flavored.
    pub fn poly(&mut self, space: VarSpace, mode: Mode) -> Poly {
        let mut vars: Vec<usize> = (0..space.rank).collect();
        if mode != Mode::Classical {
            vars.push(space.hbar());
        }
        if mode == Mode::Flavored {
            vars.extend((0..space.flavors).map(|i| space.flavor(i)));
        }
        let n = self.rng.gen_range(1..=self.bounds.max_monomials);
        let mut p = Poly::zero(space);
        for _ in 0..n {
            let deg = self.rng.gen_range(0..=self.bounds.max_degree);
            let mut exps = vec![0u32; space.nvars()];
            for _ in 0..deg {
                exps[*vars.choose(&mut self.rng).expect("rank is positive")] += 1;
            }
            let num = loop {
                let x = self.rng.gen_range(-3i64..=3);
                if x != 0 {
                    break x;
                }
            };
            let den = self.rng.gen_range(1i64..=2);
            p = &p + &Poly::monomial(space, Monomial(exps), qr(num, den));
        }
        p
    }

    pub fn coweight(&mut self, rank: usize) -> Coweight {
        let b = scaled(self.bounds.coweight_bound, rank);
        Coweight((0..rank).map(|_| self.rng.gen_range(-b..=b)).collect())
    }

    /// A sum of up to `max_terms` terms `f r^λ`.
    pub fn element(&mut self, ctx: &Arc<Context>) -> AbelianElement {
        let n = self.rng.gen_range(1..=self.bounds.max_terms);
        let terms: Vec<(Coweight, Poly)> = (0..n)
            .map(|_| {
                (
                    self.coweight(ctx.rank()),
                    self.poly(ctx.space(), ctx.mode()),
                )
            })
            .collect();
        AbelianElement::from_terms(ctx, terms).expect("sampled terms fit the context")
    }

    /// A single homogeneous term `c · m · r^λ` with `m` a monomial.
    pub fn homogeneous_term(&mut self, ctx: &Arc<Context>) -> AbelianElement {
        let space = ctx.space();
        let deg = self.rng.gen_range(0..=self.bounds.max_degree + 1);
        let mut exps = vec![0u32; space.nvars()];
        for _ in 0..deg {
            exps[self.rng.gen_range(0..space.rank)] += 1;
        }
        let c = qr(self.rng.gen_range(1..=3), 1);
        let p = Poly::monomial(space, Monomial(exps), c);
        AbelianElement::term(ctx, p, self.coweight(ctx.rank()))
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for mode in [Mode::Classical, Mode::Quantized, Mode::Flavored] {
            let (ca, cb) = (a.context(2, mode), b.context(2, mode));
            assert_eq!(ca, cb);
            assert_eq!(a.element(&ca), b.element(&cb));
        }
    }

    #[test]
    fn classical_elements_avoid_hbar() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let ctx = s.context(3, Mode::Classical);
            assert!(!s.element(&ctx).uses_hbar());
        }
    }

    #[test]
    fn chiral_matter_has_no_opposite_pairs() {
        let mut s = Sampler::new(3);
        for _ in 0..50 {
            let m = s.chiral_matter(2);
            assert!(m
                .entries()
                .iter()
                .all(|e| m.index_of(&e.weight.neg()).is_none()));
        }
    }
}
