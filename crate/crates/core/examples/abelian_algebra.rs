//! Products, commutators and Poisson brackets in the torus algebra of
//! U(1) with two flavors.

use coulombkit::abelian_algebra::{
    commutator, multiply, poisson_bracket, AbelianElement, Context, Mode,
};
use coulombkit::lattice::{MatterContent, Weight};

fn main() -> coulombkit::Result<()> {
    let matter = MatterContent::new(1, [(Weight(vec![1]), 2)])?;
    for mode in [Mode::Classical, Mode::Quantized] {
        let ctx = Context::new(1, matter.clone(), mode)?;
        let x = AbelianElement::r(&ctx, &[1]);
        let y = AbelianElement::r(&ctx, &[-1]);
        println!("[{}]", mode.as_str());
        println!("  r[1] * r[-1] = {}", multiply(&x, &y)?);
        println!("  r[-1] * r[1] = {}", multiply(&y, &x)?);
        println!("  [r[1], r[-1]] = {}", commutator(&x, &y)?);
        if mode == Mode::Classical {
            println!("  {{r[1], r[-1]}} = {}", poisson_bracket(&x, &y)?);
        }
    }
    Ok(())
}
