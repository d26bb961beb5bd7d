//! Local search for a design at the improved bound.
//! Usage: `cargo run --release --example search_optimal -- [N] [m] [seed]`

use std::time::Duration;

use ssdesign::formats::print_design;
use ssdesign::search::{search, SearchConfig};

fn main() -> ssdesign::Result<()> {
    let arg = |i: usize, d: u64| std::env::args().nth(i).map_or(d, |a| a.parse().expect("integer"));
    let (n, m, seed) = (arg(1, 14) as usize, arg(2, 17) as usize, arg(3, 1));
    let cfg = SearchConfig::new(n, m)
        .seed(seed)
        .restarts(usize::MAX)
        .budget(Duration::from_secs(120));
    let r = search(&cfg)?;
    println!("# target {}", r.target);
    println!("# {}", r.summary_line());
    print!("{}", print_design(&r.best));
    Ok(())
}
