//! Cross-checks the closed-form bound against the row-profile oracle.
//! Usage: `cargo run --example bound_oracle -- [N]`

use ssdesign::bounds::{improved_bound, oracle_detail};

fn main() -> ssdesign::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(14, |a| a.parse().expect("run size"));
    println!("m\tq\tbest_p\tformula\toracle");
    for m in n..=3 * (n - 1) {
        let formula = improved_bound(n, m)?;
        let oracle = oracle_detail(n, m)?;
        println!(
            "{m}\t{}\t{:?}\t{}\t{}{}",
            oracle.q,
            oracle.best_p,
            formula.improved,
            oracle.value,
            if oracle.value == formula.improved { "" } else { "\tMISMATCH" }
        );
    }
    Ok(())
}
