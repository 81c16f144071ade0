use proptest::prelude::*;
use sphord::group::catalog_specs;
use sphord::order::{verify_order_with, VerifyMode, VerifyOptions};
use sphord::spectrum::{exclusion_predictions, zm_formula};
use sphord::tuples::{has_repeat, Sign};
use sphord::{decide, make_group, verify_order, Side, SphericalOrder};

fn small_groups() -> Vec<String> {
    catalog_specs(6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_are_translation_invariant(g in 0usize..8, n in 2usize..6, seed in any::<u64>()) {
        let specs = small_groups();
        let group = make_group(&specs[g % specs.len()]).unwrap();
        if let Some(w) = decide(&group, n).unwrap().witness() {
            let m = group.order();
            let arr: Vec<usize> = (0..n).map(|i| ((seed >> (4 * i)) as usize) % m).collect();
            let b = (seed >> 40) as usize % m;
            let member = w.membership(&arr).unwrap();
            for side in Side::BOTH {
                let moved: Vec<usize> = arr.iter().map(|&x| group.translate(x, b, side)).collect();
                prop_assert_eq!(w.membership(&moved).unwrap(), member);
            }
            if !has_repeat(&arr) {
                let mut swapped = arr.clone();
                swapped.swap(0, 1);
                prop_assert_ne!(w.membership(&swapped).unwrap(), member);
            }
        }
    }

    #[test]
    fn literal_and_class_level_verification_agree(g in 0usize..8, n in 2usize..5, mask in any::<u32>()) {
        let specs = small_groups();
        let group = make_group(&specs[g % specs.len()]).unwrap();
        let count = SphericalOrder::uniform(&group, n, Sign::Plus).unwrap().bits().len();
        let bits = (0..count).map(|r| if mask >> (r % 32) & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
        let order = SphericalOrder::new(&group, n, bits).unwrap();
        let run = |mode| {
            verify_order_with(&group, &order, &VerifyOptions { mode, ..VerifyOptions::default() }).unwrap().passed()
        };
        prop_assert_eq!(run(VerifyMode::Literal), run(VerifyMode::ClassLevel));
    }

    #[test]
    fn formula_excludes_two_and_even_divisors(m in 1usize..40, bound in 2usize..40) {
        let f = zm_formula(m, bound);
        prop_assert!(!f.contains(&2));
        for n in f {
            prop_assert!((2..=bound).contains(&n));
            prop_assert!(n % 2 == 1 || m % n != 0);
        }
    }
}

#[test]
fn exclusions_cover_two_for_nontrivial_groups() {
    for spec in catalog_specs(16) {
        let g = make_group(&spec).unwrap();
        assert_eq!(exclusion_predictions(&g, 16).contains(&2), g.order() > 1, "{spec}");
    }
}

#[test]
fn flipping_any_bit_of_a_rigid_witness_breaks_it() {
    // translations tie every Z5 3-subset to the others, so one flip breaks
    // invariance
    let g = make_group("Z5").unwrap();
    let w = decide(&g, 3).unwrap().witness().unwrap().clone();
    for r in 0..w.bits().len() {
        assert!(!verify_order(&g, &w.with_flipped(r)).unwrap().passed());
    }
}
