//! Monopole formula for a few theories, with the quality check.

use coulombkit::lattice::{MatterContent, RootDatum, Theory, Weight};
use coulombkit::monopole::{integer_coeffs, monopole_series, quality, MonopoleRequest};

fn theory(rd: RootDatum, matter: &[(&[i64], u32)]) -> coulombkit::Result<Theory> {
    let m = MatterContent::new(
        rd.rank(),
        matter.iter().map(|(w, k)| (Weight(w.to_vec()), *k)),
    )?;
    Theory::new(rd, m)
}

fn main() -> coulombkit::Result<()> {
    let cases = [
        (
            "U(1) + 2 flavors",
            theory(RootDatum::torus(1), &[(&[1], 2)])?,
        ),
        (
            "SL(2) + 4 fundamentals",
            theory(RootDatum::sl2(), &[(&[1], 4), (&[-1], 4)])?,
        ),
        (
            "U(2) + 4 fundamentals",
            theory(RootDatum::gl(2), &[(&[1, 0], 4), (&[0, 1], 4)])?,
        ),
        ("PGL(2) pure", theory(RootDatum::pgl2(), &[])?),
    ];
    for (name, t) in cases {
        print!("{name}: ");
        match monopole_series(&MonopoleRequest::new(t.clone(), 8)) {
            Ok(h) => println!(
                "{:?} (t^0..t^8, {:?})",
                integer_coeffs(&h.series, 8),
                h.quality
            ),
            Err(e) => println!("{e} ({:?})", quality(&t.rd, &t.matter)),
        }
    }
    Ok(())
}
