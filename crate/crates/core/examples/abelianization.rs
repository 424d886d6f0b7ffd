//! Lifting dressed monopole operators into the localized torus algebra and
//! multiplying them there.

use coulombkit::abelian_algebra::{Context, Mode};
use coulombkit::abelianization::{is_weyl_invariant, localized_multiply, minuscule_lift};
use coulombkit::lattice::{Coweight, MatterContent, RootDatum, Weight};
use coulombkit::symbolic::Poly;

fn main() -> coulombkit::Result<()> {
    let rd = RootDatum::pgl2();
    let matter = MatterContent::new(1, [(Weight(vec![1]), 1), (Weight(vec![-1]), 1)])?;
    let ctx = Context::new(1, matter, Mode::Quantized)?;
    let s = ctx.space();
    let lambda = Coweight(vec![1]);
    let one = minuscule_lift(&Poly::one(s), &lambda, &ctx, &rd)?;
    let dressed = minuscule_lift(&Poly::t(s, 0), &lambda, &ctx, &rd)?;
    println!("closed orbit of {lambda}: {}", rd.is_closed_orbit(&lambda)?);
    println!("lift of 1:  {one}");
    println!("lift of t1: {dressed}");
    let prod = localized_multiply(&one, &dressed)?;
    println!("product:    {prod}");
    println!("Weyl invariant: {}", is_weyl_invariant(&prod));
    Ok(())
}
