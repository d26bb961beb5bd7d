//! All BIBD(9, 18t, 4) with distinct blocks: t = 1..3 built, t = 4..6 as complements.

use ssdesign::blocks::{is_bibd, trivial_complement};
use ssdesign::construction::{construct, plan};

fn main() -> ssdesign::Result<()> {
    for t in 1..=3 {
        let b = construct(&plan(10, 18 * t)?)?;
        let c = trivial_complement(&b)?;
        for d in [&b, &c] {
            let p = is_bibd(d).expect("balanced");
            println!("t={} {p} distinct={}", d.num_blocks() / 18, if d.has_distinct_blocks() { "yes" } else { "no" });
        }
    }
    Ok(())
}
