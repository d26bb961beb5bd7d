//! Improved and classical E(s^2) lower bounds over N <= m <= 2(N - 1).
//! Usage: `cargo run --example bound_table -- [N] [--exact]`

use ssdesign::bounds::{bound_table, improved_bound, render_table};

fn main() -> ssdesign::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let exact = args.iter().any(|a| a == "--exact");
    let runs: Vec<usize> = match args.iter().find(|a| !a.starts_with("--")) {
        Some(n) => vec![n.parse().expect("run size")],
        None => vec![10, 12, 14, 16],
    };
    for n in runs {
        println!("# N = {n}\nm\timproved\tntw");
        print!("{}", render_table(&bound_table(n, n, 2 * (n - 1))?, exact));
    }
    println!("\n{}", improved_bound(14, 23)?);
    Ok(())
}
