//! The 20-run design with 57 factors from GF(19), x = 2, q = 6, T = U = {0,1,2}.

use ssdesign::blocks::{bibd_to_design, is_bibd};
use ssdesign::construction::{half_design, initial_block, HalfSelector, ShiftSet};
use ssdesign::design::e_s2;
use ssdesign::field::make_field;
use ssdesign::formats::print_design;
use ssdesign::ntw_bound;

fn main() -> ssdesign::Result<()> {
    let f = make_field(19)?;
    let x = f.element(2)?;
    let t = ShiftSet::new(6, &[0, 1, 2])?;
    let u = HalfSelector::new(&t, &[0, 1, 2])?;
    for &r in u.members() {
        println!("S_{r},0 = {:?}", initial_block(&f, &x, &t, r)?);
    }
    let blocks = half_design(&f, &x, &t, &u)?;
    let params = is_bibd(&blocks).expect("balanced");
    println!("{params} distinct={}", if blocks.has_distinct_blocks() { "yes" } else { "no" });

    let d = bibd_to_design(&blocks)?;
    println!("E(s2) = {} = ntw {}", e_s2(&d)?, ntw_bound(20, 57)?);
    print!("{}", print_design(&d));
    Ok(())
}
