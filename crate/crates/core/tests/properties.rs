use num_traits::Signed;
use proptest::prelude::*;

use ssdesign::blocks::{bibd_to_design, design_to_bibd};
use ssdesign::bounds::{improved_bound, ntw_bound};
use ssdesign::construction::{equivalence_classes, ConstructionSpec, Part, ShiftSet};
use ssdesign::design::{e_s2, gram_summary, max_factors, row_gram, ss_gram, ss_row_gram};
use ssdesign::field::make_field;
use ssdesign::formats::{parse_blocks, parse_design, print_blocks, print_design};
use ssdesign::rational::{render, Rational, Rendering};
use ssdesign::search::{random_balanced_design, swap_delta, SearchState};

const ORDERS: [u64; 10] = [3, 5, 7, 9, 11, 13, 25, 27, 49, 81];

fn dims() -> impl Strategy<Value = (usize, usize, u64)> {
    (3usize..=8)
        .prop_flat_map(|h| {
            let n = 2 * h;
            let cap = max_factors(n) as usize;
            (Just(n), 2..=cap.min(40), any::<u64>())
        })
}

proptest! {
    #[test]
    fn field_axioms(i in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = make_field(ORDERS[i]).unwrap();
        let s = f.order();
        let (a, b, c) = (f.element(a % s).unwrap(), f.element(b % s).unwrap(), f.element(c % s).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&a.neg()).unwrap(), f.zero());
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv).unwrap(), f.one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn primitive_powers_cover_the_group(i in 0usize..ORDERS.len()) {
        let f = make_field(ORDERS[i]).unwrap();
        let x = f.primitive();
        let mut seen: Vec<u32> = (0..f.order() as u64 - 1).map(|e| x.pow(e).index()).collect();
        seen.sort_unstable();
        seen.dedup();
        prop_assert_eq!(seen.len(), f.order() as usize - 1);
        prop_assert!(!seen.contains(&0));
    }

    #[test]
    fn translation_classes((h, seed) in (1u32..=6, any::<u64>()), r in 0u32..16) {
        let q = 2 * h;
        let classes = equivalence_classes(q).unwrap();
        let total: u64 = classes.iter().map(|c| c.size as u64).sum();
        prop_assert_eq!(total, ssdesign::design::binomial(q as u64, h as u64));
        let c = classes[(seed % classes.len() as u64) as usize];
        let t = c.representative.translate(r);
        prop_assert_eq!(t.canonical(), c.representative);
        prop_assert_eq!(q % t.order(), 0);
        prop_assert_eq!(t.order(), c.size);
    }

    #[test]
    fn random_designs_respect_bounds((n, m, seed) in dims()) {
        let x = random_balanced_design(n, m, seed).unwrap();
        prop_assert!(x.validate().passed());
        prop_assert_eq!(ss_gram(&x), ss_row_gram(&x));
        for row in row_gram(&x) {
            prop_assert_eq!(row.iter().sum::<i64>(), 0);
        }
        if m > n - 1 {
            let b = improved_bound(n, m).unwrap();
            prop_assert!(b.improved >= b.ntw);
            prop_assert_eq!(b.ntw, ntw_bound(n, m).unwrap());
            prop_assert!(e_s2(&x).unwrap() >= b.improved);
        }
        if n % 4 == 2 {
            prop_assert!(gram_summary(&x).unwrap().offdiag.iter().all(|s| s.abs() >= 2));
        }
    }

    #[test]
    fn swap_delta_is_exact((n, m, seed) in dims(), col in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let x = random_balanced_design(n, m, seed).unwrap();
        let col = col % m;
        let plus: Vec<usize> = (0..n).filter(|&r| x.get(r, col) == 1).collect();
        let minus: Vec<usize> = (0..n).filter(|&r| x.get(r, col) == -1).collect();
        let (a, b) = (plus[a % plus.len()], minus[b % minus.len()]);
        let mut y = x.clone();
        y.swap_in_column(col, a, b);
        let delta = swap_delta(&x, col, a, b).unwrap();
        prop_assert_eq!(delta, ss_gram(&y) - ss_gram(&x));
        let mut st = SearchState::new(x.clone());
        prop_assert_eq!(st.swap_delta(col, a, b).unwrap(), delta);
        st.apply(col, a, b).unwrap();
        prop_assert_eq!(st.ss(), ss_gram(&y));
        prop_assert_eq!(st.apply(col, b, a).unwrap(), -delta);
        prop_assert_eq!(st.design(), &x);
    }

    #[test]
    fn formats_round_trip((n, m, seed) in dims()) {
        let x = random_balanced_design(n, m, seed).unwrap();
        prop_assert_eq!(parse_design(&print_design(&x)).unwrap(), x.clone());
        let b = design_to_bibd(&x);
        prop_assert_eq!(parse_blocks(&print_blocks(&b)).unwrap(), b.clone());
        prop_assert_eq!(design_to_bibd(&bibd_to_design(&b).unwrap()), b);
    }

    #[test]
    fn spec_text_round_trip(i in 0usize..4, half in any::<bool>(), r in 0u32..6) {
        let t = equivalence_classes(6).unwrap()[i].representative.translate(r);
        let part = if half { Part::half(t).unwrap() } else { Part::full(t) };
        let spec = ConstructionSpec::new(20).with_part(part).with_part(Part::full(ShiftSet::new(2, &[0]).unwrap()));
        prop_assert_eq!(ConstructionSpec::parse(&spec.to_text()).unwrap(), spec);
    }

    #[test]
    fn rendering_brackets_value(num in -10_000_000i64..10_000_000, den in 1i64..100_000) {
        let v = Rational::new(num, den);
        let unit = Rational::new(1, 100_000);
        let parse = |s: String| {
            let neg = s.starts_with('-');
            let digits: i64 = s.trim_start_matches('-').replace('.', "").parse().unwrap();
            Rational::new(if neg { -digits } else { digits }, 100_000)
        };
        let t = parse(render(v, 5, Rendering::Truncate));
        let r = parse(render(v, 5, Rendering::Round));
        prop_assert!((v - t).abs() < unit);
        prop_assert!((v - r).abs() * 2 <= unit);
    }
}
