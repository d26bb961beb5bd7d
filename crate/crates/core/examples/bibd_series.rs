//! BIBD(N - 1, b, N/2 - 1) with distinct blocks for every reachable b.
//! Usage: `cargo run --example bibd_series -- [N]`

use ssdesign::blocks::{bibd_to_design, is_bibd};
use ssdesign::construction::{construct, plan};
use ssdesign::design::e_s2;

fn main() -> ssdesign::Result<()> {
    let n: u32 = std::env::args().nth(1).map_or(18, |a| a.parse().expect("run size"));
    let v = n as usize - 1;
    // Integral replication forces b to be a multiple of 2(N - 1) when N = 2 (mod 4).
    let unit = if n % 4 == 2 { 2 * v } else { v };
    for t in 1.. {
        let Ok(spec) = plan(n, unit * t) else { break };
        let blocks = construct(&spec)?;
        let p = is_bibd(&blocks).expect("balanced");
        let d = bibd_to_design(&blocks)?;
        let parts: Vec<String> = spec
            .parts
            .iter()
            .map(|p| format!("q={}{}{}", p.q(), p.shift, if p.half.is_some() { "/2" } else { "" }))
            .collect();
        println!("t={t:<3} {p}  E(s2)={}  {}", e_s2(&d)?, parts.join(" "));
    }
    Ok(())
}
