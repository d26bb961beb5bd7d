//! Stores constructed designs with their specs, then reads one back.
//! Usage: `cargo run --example catalog -- [ROOT]`

use ssdesign::blocks::bibd_to_design;
use ssdesign::catalog::Catalog;
use ssdesign::construction::{construct, plan};
use ssdesign::rational::fraction;

fn main() -> ssdesign::Result<()> {
    let tmp;
    let root = match std::env::args().nth(1) {
        Some(r) => r.into(),
        None => {
            tmp = std::env::temp_dir().join(format!("ssd-catalog-example-{}", std::process::id()));
            tmp.clone()
        }
    };
    let cat = Catalog::open(&root)?;
    for (n, b) in [(20, 57), (18, 34 * 3), (14, 26 * 5), (10, 54)] {
        let spec = plan(n, b)?;
        let x = bibd_to_design(&construct(&spec)?)?;
        let (e, new) = cat.add(&x, &spec.to_text())?;
        println!("{} N={n} m={b} {}", if new { "added " } else { "exists" }, &e.hash[..16]);
    }
    for e in cat.list()? {
        println!("{}\t{}\t{}\t{}", e.runs, e.factors, fraction(e.es2), e.path.display());
    }
    let first = &cat.list()?[0];
    let (entry, _, x) = cat.get(&first.hash)?;
    println!("{}x{} from:\n{}", x.runs(), x.factors(), entry.provenance);
    println!("root {}", root.display());
    Ok(())
}
