//! Randomized checks of the algebra axioms from a fixed seed.

use coulombkit::properties::run_all;

fn main() -> coulombkit::Result<()> {
    for rep in run_all(1, 25)? {
        let status = if rep.passed() { "ok" } else { "FAILED" };
        println!("{:<32} {:>3} cases  {status}", rep.name, rep.cases);
    }
    Ok(())
}
