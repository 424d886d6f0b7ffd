//! Chamber generators of the associated graded algebra and a check that they
//! generate every dominant class in a box.

use coulombkit::degeneration::{chamber_generators, generation_check};
use coulombkit::lattice::{MatterContent, RootDatum, Weight};

fn main() -> coulombkit::Result<()> {
    let rd = RootDatum::gl(2);
    let matter = MatterContent::new(2, [(Weight(vec![1, 0]), 4), (Weight(vec![0, 1]), 4)])?;
    let d = chamber_generators(&rd, &matter)?;
    println!(
        "{} hyperplanes, {} chambers",
        d.normals.len(),
        d.chambers.len()
    );
    for c in &d.chambers {
        let gens: Vec<String> = c.generators.iter().map(|g| g.to_string()).collect();
        println!("  signs {:?}: {}", c.signs, gens.join(" "));
    }
    let report = generation_check(&rd, &matter, 3)?;
    println!(
        "{} dominant classes checked, {} not generated",
        report.classes_checked,
        report.failures.len()
    );
    Ok(())
}
