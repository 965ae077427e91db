mod common;

use adic_speedup::towers::{
    nested_towers, refine_tower, return_times, tall_tower, tower_over_base,
};
use adic_speedup::{ClopenSet, InvariantMeasure, OdometerSystem};
use common::{member, step_n, words_in};
use proptest::prelude::*;

/// First `t ≥ 1` with `T^t w` back in the set, by stepping digits.
fn first_return(set: &ClopenSet, w: &[u8]) -> u64 {
    let s = set.system();
    let mut cur = w.to_vec();
    for t in 1.. {
        cur = step_n(s, &cur, 1);
        if member(set, &cur) {
            return t;
        }
    }
    unreachable!()
}

fn base_set() -> impl Strategy<Value = ClopenSet> {
    (
        prop_oneof![Just(vec![2u32]), Just(vec![3]), Just(vec![2, 3])],
        1u32..=4,
    )
        .prop_flat_map(|(bases, n)| {
            let s = OdometerSystem::new(&bases).unwrap();
            let d = s.denominator(n).unwrap();
            proptest::collection::btree_set(0..d, 1..=d.min(5) as usize).prop_map(move |cells| {
                ClopenSet::from_indices(&s, n, cells.into_iter().collect()).unwrap()
            })
        })
}

proptest! {
    #[test]
    fn towers_over_random_bases(base in base_set()) {
        let m = InvariantMeasure::new(base.system());
        let p = tower_over_base(&m, &base).unwrap();
        let report = p.check().unwrap();
        prop_assert!(report.all_passed(), "{}", report);
        prop_assert_eq!(p.bases().unwrap(), base.clone());
        let profile = return_times(&m, &base).unwrap();
        for w in words_in(&base, base.depth()) {
            let want = first_return(&base, &w);
            let idx = base.system().index_of(&w).unwrap();
            prop_assert_eq!(profile.time_of_cell(base.depth(), idx), Some(want));
        }
        for col in p.columns() {
            for w in words_in(&col.base, col.base.depth()) {
                prop_assert_eq!(first_return(&base, &w), col.height);
            }
        }
    }

    #[test]
    fn refinement_keeps_tower_structure(base in base_set(), cut in 0usize..4) {
        let s = base.system().clone();
        let m = InvariantMeasure::new(&s);
        let p = tower_over_base(&m, &base).unwrap();
        let words = base.words();
        let piece = ClopenSet::from_words(&s, &words[..cut.min(words.len())]).unwrap();
        let q = vec![piece.clone(), piece.complement()];
        let q: Vec<ClopenSet> = q.into_iter().filter(|c| !c.is_empty()).collect();
        let r = refine_tower(&p, &q).unwrap();
        prop_assert!(r.check().unwrap().all_passed());
        prop_assert!(r.refines(&p).unwrap());
        prop_assert!(r.refines_partition(&q).unwrap());
    }
}

#[test]
fn return_times_of_two_cells() {
    let s = OdometerSystem::dyadic();
    let m = InvariantMeasure::new(&s);
    let a = ClopenSet::parse(&s, "00,10").unwrap();
    let profile = return_times(&m, &a).unwrap();
    // T(00) = 10 and T³(10) = 00, by digit carry.
    assert_eq!(first_return(&a, &[0, 0]), 1);
    assert_eq!(first_return(&a, &[1, 0]), 3);
    assert_eq!(profile.time_of_cell(2, 0), Some(1));
    assert_eq!(profile.time_of_cell(2, 1), Some(3));
}

#[test]
fn tall_towers_and_nesting() {
    let s = OdometerSystem::dyadic();
    let m = InvariantMeasure::new(&s);
    let t = tall_tower(&m, 5).unwrap();
    assert!(t.columns().iter().all(|c| c.height >= 5));
    assert!(t.check().unwrap().all_passed());
    let nest = nested_towers(&m, &[0, 1, 1, 0], 4).unwrap();
    assert_eq!(nest.len(), 4);
    for w in nest.windows(2) {
        assert!(w[1].refines(&w[0]).unwrap());
    }
    for p in &nest {
        assert!(p.check().unwrap().all_passed());
        assert!(p.bases().unwrap().contains_point(&[0, 1, 1, 0]));
    }
}
