//! Arithmetic in GF(s). Usage: `cargo run --example finite_field -- [s]`

use ssdesign::field::make_field;

fn main() -> ssdesign::Result<()> {
    let s: u64 = std::env::args().nth(1).map_or(9, |a| a.parse().expect("field order"));
    let f = make_field(s)?;
    println!("{f}");
    let x = f.primitive();
    let powers: Vec<String> = (0..f.order() as u64 - 1).map(|e| x.pow(e).index().to_string()).collect();
    println!("powers of x = {}: {}", x.index(), powers.join(" "));

    let a = f.element(1 % f.order())?;
    let b = f.element(f.order() - 1)?;
    println!("{} + {} = {}", a.index(), b.index(), a.add(&b)?.index());
    println!("{} * {} = {}", a.index(), b.index(), a.mul(&b)?.index());
    if let Some(inv) = b.inverse() {
        println!("{}^-1 = {} (order {})", b.index(), inv.index(), b.multiplicative_order().unwrap());
    }
    Ok(())
}
