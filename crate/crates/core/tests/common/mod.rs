#![allow(dead_code)]

use kwise_core::{Profile, Ranking};
use proptest::prelude::*;

pub fn r(order: &[usize]) -> Ranking {
    Ranking::from_order(order).unwrap()
}

pub fn ranking(m: usize) -> impl Strategy<Value = Ranking> {
    Just((0..m).collect::<Vec<usize>>()).prop_shuffle().prop_map(|o| Ranking::from_order(&o).unwrap())
}

pub fn profile(m: usize, max_groups: usize, max_count: u64) -> impl Strategy<Value = Profile> {
    prop::collection::vec((ranking(m), 1..=max_count), 1..=max_groups)
        .prop_map(move |groups| Profile::from_groups(m, groups).unwrap())
}

pub fn sized_profile(ms: std::ops::RangeInclusive<usize>, max_groups: usize) -> impl Strategy<Value = Profile> {
    ms.prop_flat_map(move |m| profile(m, max_groups, 3))
}

/// Voters 49 x c1>c2>c3, 48 x c3>c2>c1, 3 x c2>c3>c1.
pub fn three_candidate_example() -> Profile {
    Profile::from_groups(3, [(r(&[0, 1, 2]), 49), (r(&[2, 1, 0]), 48), (r(&[1, 2, 0]), 3)]).unwrap()
}

pub fn six_candidate_example() -> Profile {
    Profile::from_groups(
        6,
        [
            (r(&[0, 1, 3, 2, 4, 5]), 4),
            (r(&[0, 2, 1, 3, 4, 5]), 4),
            (r(&[5, 0, 1, 3, 2, 4]), 1),
            (r(&[5, 0, 3, 2, 1, 4]), 1),
        ],
    )
    .unwrap()
}
