//! Hypertoric Coulomb branches: monopole formula against the hyperkähler
//! reduction count.

use coulombkit::hypertoric::{compare_with_monopole, dictionary_check, LatticeSequence};
use coulombkit::monopole::integer_coeffs;

fn main() -> coulombkit::Result<()> {
    let seq = LatticeSequence::from_alpha(vec![vec![1], vec![1], vec![1]])?;
    println!("alpha = {:?}, beta = {:?}", seq.alpha, seq.beta);
    let cmp = compare_with_monopole(&seq, 10)?;
    println!("monopole: {:?}", integer_coeffs(&cmp.monopole, 10));
    println!("oracle:   {:?}", integer_coeffs(&cmp.oracle, 10));
    println!("series agree: {}", cmp.matches);
    println!(
        "monomial dictionary consistent: {}",
        dictionary_check(&seq, 3)?
    );
    Ok(())
}
