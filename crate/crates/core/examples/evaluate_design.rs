//! Validates a design file and reports E(s^2) against the bound.
//! Usage: `cargo run --example evaluate_design -- FILE`

use ssdesign::design::{gram_summary, validate_design};
use ssdesign::formats::parse_design;
use ssdesign::improved_bound;

fn main() -> ssdesign::Result<()> {
    let path = std::env::args().nth(1).expect("design file");
    let x = parse_design(&std::fs::read_to_string(path)?)?;
    let report = validate_design(&x);
    println!("{}x{} {report}", x.runs(), x.factors());
    let g = gram_summary(&x)?;
    let mut dist = std::collections::BTreeMap::new();
    for s in &g.offdiag {
        *dist.entry(s.abs()).or_insert(0) += 1;
    }
    println!("|s_ij| counts {dist:?}");
    println!("E(s2) = {}", g.e_s2);
    if let Ok(b) = improved_bound(x.runs(), x.factors()) {
        println!("bound = {} ({:?}), gap {}", b.improved, b.branch, g.e_s2 - b.improved);
    }
    Ok(())
}
