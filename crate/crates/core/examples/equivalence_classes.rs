//! Translation classes of half-size subsets of Z_q.
//! Usage: `cargo run --example equivalence_classes -- [q...]`

use ssdesign::construction::{equivalence_classes, HalfSelector};

fn main() -> ssdesign::Result<()> {
    let qs: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().expect("modulus")).collect();
    let qs = if qs.is_empty() { vec![4, 6, 8] } else { qs };
    for q in qs {
        let classes = equivalence_classes(q)?;
        println!("q = {q}: {} classes", classes.len());
        for c in classes {
            let half = HalfSelector::default_for(&c.representative)
                .map(|u| format!("U = {:?}", u.members()))
                .unwrap_or_else(|_| "no half selector".into());
            println!("  T = {:<12} size {:<2} {half}", c.representative.to_string(), c.size);
        }
    }
    Ok(())
}
