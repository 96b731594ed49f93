mod common;

use common::{profile, r, ranking};
use kwise_core::distance::profile_distance_with;
use kwise_core::sampling::impartial_culture;
use kwise_core::solver::{brute_force_consensus, dp_consensus, enumerate_consensus, local_cost};
use kwise_core::{BinomialPrefixTable, Candidate, Profile, Ranking, SubsetMask};
use proptest::prelude::*;

fn consensus_set(p: &Profile, k: usize) -> Vec<Ranking> {
    let res = enumerate_consensus(p, k, 100_000).unwrap();
    assert!(!res.truncated);
    res.rankings
}

// voters restricted to every candidate but `c`, renumbered to 0..m-1
fn without_candidate(p: &Profile, c: Candidate) -> Profile {
    let shift = |x: Candidate| if x.0 > c.0 { x.0 - 1 } else { x.0 };
    let groups = p.groups().iter().map(|g| {
        let order: Vec<usize> = g.ranking.iter().filter(|&x| x != c).map(shift).collect();
        (Ranking::from_order(&order).unwrap(), g.count)
    });
    Profile::from_groups(p.m() - 1, groups).unwrap()
}

#[test]
fn three_candidate_example() {
    let p = common::three_candidate_example();
    let three = enumerate_consensus(&p, 3, 100).unwrap();
    assert_eq!(three.optimum, 201);
    assert_eq!(three.rankings, vec![r(&[0, 1, 2])]);
    let two = enumerate_consensus(&p, 2, 100).unwrap();
    assert_eq!(two.rankings, vec![r(&[1, 2, 0])]);
}

#[test]
fn reinforcement() {
    let mut checked = 0;
    for seed in 0..20_000u64 {
        let m = 3 + (seed % 2) as usize;
        let a = impartial_culture(m, 1 + (seed % 3) as usize, seed).unwrap();
        let b = impartial_culture(m, 1 + (seed / 3 % 3) as usize, seed ^ 0x9e37_79b9_7f4a_7c15).unwrap();
        for k in 2..=m {
            let (ca, cb) = (consensus_set(&a, k), consensus_set(&b, k));
            let common: Vec<Ranking> = ca.iter().filter(|x| cb.contains(x)).cloned().collect();
            if common.is_empty() {
                continue;
            }
            assert_eq!(consensus_set(&a.concat(&b).unwrap(), k), common, "seed {seed}, k {k}");
            checked += 1;
        }
        if checked >= 200 {
            break;
        }
    }
    assert!(checked >= 200);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dp_matches_brute_force(p in (2usize..=7).prop_flat_map(|m| profile(m, 20, 1))) {
        for k in 2..=p.m() {
            let brute = brute_force_consensus(&p, k).unwrap();
            let dp = dp_consensus(&p, k).unwrap();
            prop_assert_eq!(dp.optimum, brute.optimum);
            prop_assert!(brute.rankings.contains(&dp.rankings[0]));
            let all = enumerate_consensus(&p, k, 10_000).unwrap();
            prop_assert_eq!(all.rankings, brute.rankings);
        }
    }

    #[test]
    fn first_choice_decomposition(
        (p, rh) in (2usize..=7).prop_flat_map(|m| (profile(m, 6, 3), ranking(m))),
        k_off in 0usize..6,
    ) {
        let m = p.m();
        let k = 2 + k_off % (m - 1);
        let order = rh.order_indices();
        let top = rh.at(0);
        let table = BinomialPrefixTable::new(m, k).unwrap();
        let whole = profile_distance_with(&rh, &p, &table).unwrap();
        let rest_profile = without_candidate(&p, top);
        let rest_order: Vec<usize> = order[1..].iter().map(|&x| if x > top.0 { x - 1 } else { x }).collect();
        let rest = if m > 2 {
            let t = BinomialPrefixTable::new(m - 1, k.min(m - 1)).unwrap();
            profile_distance_with(&Ranking::from_order(&rest_order).unwrap(), &rest_profile, &t).unwrap()
        } else {
            0
        };
        let local = local_cost(SubsetMask::full(m), top, &p, k, &table).unwrap();
        prop_assert_eq!(whole, rest + local);
    }

    #[test]
    fn unanimity(p in (2usize..=6).prop_flat_map(|m| profile(m, 3, 4))) {
        let m = p.m();
        for k in 2..=m {
            for cons in consensus_set(&p, k) {
                for a in (0..m).map(Candidate) {
                    for b in (0..m).map(Candidate) {
                        if a != b && p.unanimous(a, b) {
                            prop_assert!(cons.prefers(a, b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dominated_suffix(
        (head, tail, perm) in (1usize..=4, 1usize..=3).prop_flat_map(|(h, t)| (profile(h, 6, 3), ranking(t), ranking(h + t)))
    ) {
        let (h, t) = (head.m(), tail.len());
        let m = h + t;
        let groups = head.groups().iter().map(|g| {
            let mut order = g.ranking.order_indices();
            order.extend(tail.iter().map(|c| c.0 + h));
            (Ranking::from_order(&order).unwrap(), g.count)
        });
        let p = Profile::from_groups(m, groups).unwrap().relabel(&perm).unwrap();
        let block: Vec<Candidate> = tail.iter().map(|c| perm.at(c.0 + h)).collect();
        for k in 2..=m {
            for cons in consensus_set(&p, k) {
                let suffix: Vec<Candidate> = cons.iter().skip(h).collect();
                prop_assert_eq!(&suffix, &block);
            }
        }
    }

    #[test]
    fn neutrality((p, perm) in (2usize..=6).prop_flat_map(|m| (profile(m, 8, 3), ranking(m)))) {
        for k in 2..=p.m() {
            let mut mapped: Vec<Ranking> = consensus_set(&p, k).iter().map(|x| x.relabel(&perm).unwrap()).collect();
            mapped.sort();
            prop_assert_eq!(consensus_set(&p.relabel(&perm).unwrap(), k), mapped);
        }
    }
}
