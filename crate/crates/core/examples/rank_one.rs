//! Hypersurface equations of rank-one Coulomb branches.

use coulombkit::abelian_algebra::Mode;
use coulombkit::abelianization::rank1_branch;
use coulombkit::lattice::{MatterContent, RootDatum, Theory, Weight};

fn main() -> coulombkit::Result<()> {
    let pair = |k| MatterContent::new(1, [(Weight(vec![1]), k), (Weight(vec![-1]), k)]);
    let cases = [
        (
            "SL(2) pure",
            Theory::new(RootDatum::sl2(), MatterContent::new(1, [])?)?,
        ),
        (
            "SL(2) + 4 fundamentals",
            Theory::new(RootDatum::sl2(), pair(4)?)?,
        ),
        (
            "PGL(2) pure",
            Theory::new(RootDatum::pgl2(), MatterContent::new(1, [])?)?,
        ),
        (
            "PGL(2) + adjoint",
            Theory::new(RootDatum::pgl2(), pair(1)?)?,
        ),
    ];
    for (name, t) in cases {
        let h = rank1_branch(&t, Mode::Classical)?;
        println!(
            "{name}: {} with N = {}, c = {}; deg xi = {}, deg eta = {}, deg delta = {}",
            h.family.as_str(),
            h.n,
            h.c,
            h.deg_xi,
            h.deg_eta,
            h.deg_delta
        );
    }
    Ok(())
}
