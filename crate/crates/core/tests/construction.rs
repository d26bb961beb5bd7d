use ssdesign::blocks::{bibd_to_design, is_bibd};
use ssdesign::construction::{
    construct, equivalence_classes, full_design, half_design, initial_blocks, plan, ConstructionSpec,
    HalfSelector, Part, ShiftSet,
};
use ssdesign::design::e_s2;
use ssdesign::error::Error;
use ssdesign::field::make_field;
use ssdesign::rational::Rational;

/// Rows 2..N of the design from one initial block over Z_p are cyclic shifts of row 2.
#[test]
fn example_20_runs_is_cyclic() {
    let f = make_field(19).unwrap();
    let x = f.element(2).unwrap();
    let t = ShiftSet::new(6, &[0, 1, 2]).unwrap();
    let u = HalfSelector::new(&t, &[0, 1, 2]).unwrap();
    let d = bibd_to_design(&half_design(&f, &x, &t, &u).unwrap()).unwrap();
    for family in 0..3 {
        let cols: Vec<usize> = (19 * family..19 * (family + 1)).collect();
        for row in 1..20 {
            for (k, _) in cols.iter().enumerate() {
                // Column k of the family is block S + k, so treatment t is in it iff t - k is in S.
                let shifted = 1 + (row - 1 + 19 - k % 19) % 19;
                assert_eq!(d.get(row, cols[k]), d.get(shifted, cols[0]), "family {family} row {row} col {k}");
            }
        }
    }
}

#[test]
fn full_and_half_designs_for_twenty_runs() {
    let f = make_field(19).unwrap();
    let x = f.primitive();
    let mut counts = Vec::new();
    for c in equivalence_classes(6).unwrap() {
        let t = c.representative;
        let full = full_design(&f, &x, &t).unwrap();
        let half = half_design(&f, &x, &t, &HalfSelector::default_for(&t).unwrap()).unwrap();
        assert_eq!(full.num_blocks(), 2 * half.num_blocks());
        for d in [&full, &half] {
            let p = is_bibd(d).unwrap();
            assert_eq!((p.v, p.k), (19, 9));
            assert!(d.has_distinct_blocks());
            let want = if p.b > 19 { ssdesign::ntw_bound(20, p.b).unwrap() } else { Rational::from_integer(0) };
            assert_eq!(e_s2(&bibd_to_design(d).unwrap()).unwrap(), want);
        }
        counts.push(half.num_blocks() / 19);
    }
    assert_eq!(counts, vec![3, 3, 3, 1]);
}

#[test]
fn non_prime_power_rejected() {
    assert!(matches!(ConstructionSpec::new(16).field(), Err(Error::NotOddPrimePower(15))));
    assert!(matches!(plan(16, 30), Err(Error::NotOddPrimePower(15))));
}

#[test]
fn qr_blocks_are_a_paley_difference_set() {
    // For N - 1 = 3 (mod 4) the residues form a (v, (v-1)/2, (v-3)/4) difference set.
    for v in [7u64, 11, 19, 23, 27] {
        let f = make_field(v).unwrap();
        let t = ShiftSet::new(2, &[0]).unwrap();
        let qr = &initial_blocks(&f, &f.primitive(), &t).unwrap()[..1];
        let rep = ssdesign::construction::verify_difference_family(qr, &f);
        assert_eq!(rep.uniform, Some((v as usize - 3) / 4), "v={v}");
    }
}

#[test]
fn example_fourteen_runs_mixes_moduli() {
    let t6 = equivalence_classes(6).unwrap();
    let mut spec = ConstructionSpec::new(14);
    for c in &t6 {
        spec.parts.push(Part::full(c.representative));
    }
    spec.parts.push(Part::full(ShiftSet::new(4, &[0, 1]).unwrap()));
    let b = construct(&spec).unwrap();
    assert_eq!(b.num_blocks(), 26 * 12);
    assert!(b.has_distinct_blocks());
    let p = is_bibd(&b).unwrap();
    assert_eq!((p.v, p.k, p.r, p.lambda), (13, 6, 144, 60));
    // Twelve units is everything: one more class would clash.
    assert!(plan(14, 26 * 13).is_err());
}

#[test]
fn plan_round_trips_through_text() {
    let spec = plan(18, 34 * 17).unwrap();
    let again = ConstructionSpec::parse(&spec.to_text()).unwrap();
    assert_eq!(again, spec);
    let b = construct(&again).unwrap();
    assert_eq!(e_s2(&bibd_to_design(&b).unwrap()).unwrap(), Rational::new(578 - 17, 577) * Rational::new(324, 17));
}
