//! Parsing and evaluating element expressions.

use std::collections::BTreeMap;

use coulombkit::abelian_algebra::{Context, Mode};
use coulombkit::cli::expr::{eval_element, parse_element, parse_expr};
use coulombkit::lattice::{MatterContent, Weight};

fn main() -> coulombkit::Result<()> {
    let matter = MatterContent::new(2, [(Weight(vec![1, 0]), 1), (Weight(vec![1, -1]), 1)])?;
    let ctx = Context::new(2, matter, Mode::Flavored)?;
    let mut env = BTreeMap::new();
    env.insert("x".to_string(), parse_element("r[1,0] + 1/2*t2", &ctx)?);
    for src in [
        "x^2",
        "r[1,0]*r[-1,0]",
        "r[0,1]*r[0,-1] - r[0,-1]*r[0,1]",
        "(t1 + b1)*r[1,1]",
    ] {
        println!("{src} = {}", eval_element(&parse_expr(src)?, &ctx, &env)?);
    }
    match parse_expr("r[1,") {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("error: {e}"),
    }
    Ok(())
}
