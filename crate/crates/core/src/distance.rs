//! Kendall tau, the k-wise Kendall tau and its distance to a profile.
//!
//! For rankings `r` and `r'`, the k-wise distance counts contest sets `S`
//! with `2 <= |S| <= k` whose top choice differs between `r` and `r'`.
//! A disagreement on `S` is charged to the pair `(t_r(S), t_r'(S))`: with
//! `c` on top in `r` and `c'` on top in `r'`, the remaining members of `S`
//! must lie below `c` in `r` and below `c'` in `r'`. Summing over inverted
//! pairs gives the closed form used by [`kwise`]:
//!
//! ```text
//! sum over {c, c'} with c >_r c' and c' >_r' c of  sum_{i=0}^{k-2} C(|B_c(r) & B_c'(r')|, i)
//! ```

use alloc::vec::Vec;

use crate::binom::BinomialPrefixTable;
use crate::error::{Error, Result};
use crate::profile::{Candidate, Profile, Ranking, SubsetMask};

fn same_m(r: &Ranking, r2: &Ranking) -> Result<usize> {
    if r.len() != r2.len() {
        return Err(Error::DimensionMismatch { expected: r.len(), found: r2.len() });
    }
    Ok(r.len())
}

fn check_k(k: usize, m: usize) -> Result<()> {
    if k < 2 || k > m {
        Err(Error::InvalidK { k, m })
    } else {
        Ok(())
    }
}

/// Number of candidate pairs ordered oppositely by `r` and `r2`.
pub fn kendall_tau(r: &Ranking, r2: &Ranking) -> Result<u64> {
    let m = same_m(r, r2)?;
    let mut inversions = 0u64;
    // walk r top-down; every candidate seen earlier that r2 places lower is an inversion
    let seq: Vec<usize> = r.iter().map(|c| r2.position(c)).collect();
    for j in 1..m {
        inversions += seq[..j].iter().filter(|&&p| p > seq[j]).count() as u64;
    }
    Ok(inversions)
}

/// Largest `m` accepted by [`kwise_naive`] for a given `k`.
pub fn naive_bound(k: usize) -> usize {
    if k <= 5 {
        20
    } else {
        15
    }
}

/// k-wise distance by enumerating every contest set of size `2..=k`.
///
/// Sets are visited by increasing size. Intended as a reference for
/// [`kwise`]; refuses inputs above [`naive_bound`].
pub fn kwise_naive(r: &Ranking, r2: &Ranking, k: usize) -> Result<u64> {
    let m = same_m(r, r2)?;
    check_k(k, m)?;
    let bound = naive_bound(k);
    if m > bound {
        return Err(Error::EnumerationBudget { what: "k-wise set enumeration", size: m, bound });
    }
    let mut count = 0u64;
    for size in 2..=k {
        for set in SubsetMask::subsets_of_size(m, size) {
            if r.top_choice(set)? != r2.top_choice(set)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// k-wise distance in closed form, `O(m^2)` word operations.
pub fn kwise(r: &Ranking, r2: &Ranking, k: usize, table: &BinomialPrefixTable) -> Result<u64> {
    let m = same_m(r, r2)?;
    check_k(k, m)?;
    table.check(m, k)?;
    let below = r.below_sets();
    let below2 = r2.below_sets();
    let mut total = 0u64;
    for (i, c) in r.iter().enumerate() {
        // c' ranges over candidates below c in r that r2 puts above c
        for c2 in r.iter().skip(i + 1) {
            if r2.prefers(c2, c) {
                let shared = (below[c.0] & below2[c2.0]).len();
                total = total.checked_add(table.prefix(shared)).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(total)
}

/// `sum_{r' in profile} count(r') * kwise(r, r')`.
pub fn profile_distance(r: &Ranking, profile: &Profile, k: usize) -> Result<u64> {
    if r.len() != profile.m() {
        return Err(Error::DimensionMismatch { expected: profile.m(), found: r.len() });
    }
    let table = BinomialPrefixTable::new(profile.m(), k)?;
    profile_distance_with(r, profile, &table)
}

/// [`profile_distance`] with a prebuilt table; `k` is taken from the table.
pub fn profile_distance_with(r: &Ranking, profile: &Profile, table: &BinomialPrefixTable) -> Result<u64> {
    let k = table.k();
    profile.groups().iter().try_fold(0u64, |acc, g| {
        let d = kwise(r, &g.ranking, k, table)?;
        d.checked_mul(g.count).and_then(|x| acc.checked_add(x)).ok_or(Error::Overflow)
    })
}

/// Position-weighted Kendall tau.
///
/// `weights[i]` is the cost of swapping positions `i` and `i + 1` (0-based,
/// with `weights[0] = 1` by convention). Each discordant pair contributes the
/// product of the average swap costs of moving either candidate between its
/// two positions. A candidate whose position is unchanged gets the weight of
/// that position, the limit of the average.
pub fn position_weighted_kt(r: &Ranking, r2: &Ranking, weights: &[f64]) -> Result<f64> {
    let m = same_m(r, r2)?;
    if weights.len() != m || weights[0] != 1.0 || weights.iter().any(|w| w.is_nan() || *w < 0.0) {
        return Err(Error::InvalidWeights);
    }
    // cumulative[i] = w_1 + ... + w_{i+1}
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect();
    let avg_cost = |c: Candidate| {
        let (a, b) = (r.position(c), r2.position(c));
        if a == b {
            weights[a]
        } else {
            (cumulative[a] - cumulative[b]) / (a as f64 - b as f64)
        }
    };
    let mut total = 0.0;
    for (i, c) in r.iter().enumerate() {
        for c2 in r.iter().skip(i + 1) {
            if r2.prefers(c2, c) {
                total += avg_cost(c) * avg_cost(c2);
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(order: &[usize]) -> Ranking {
        Ranking::from_order(order).unwrap()
    }

    #[test]
    fn kendall_tau_examples() {
        let a = r(&[0, 1, 2, 3, 4]);
        assert_eq!(kendall_tau(&a, &a).unwrap(), 0);
        assert_eq!(kendall_tau(&r(&[0, 1, 2]), &r(&[1, 0, 2])).unwrap(), 1);
        assert_eq!(kendall_tau(&a, &a.reversed()).unwrap(), 10);
        assert!(matches!(kendall_tau(&a, &r(&[0, 1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn three_ranking_example() {
        // r1 = c1>c2>c3, r2 = c1>c3>c2, r3 = c2>c1>c3
        let (r1, r2, r3) = (r(&[0, 1, 2]), r(&[0, 2, 1]), r(&[1, 0, 2]));
        let t3 = BinomialPrefixTable::new(3, 3).unwrap();
        let t2 = BinomialPrefixTable::new(3, 2).unwrap();
        assert_eq!(kwise_naive(&r1, &r2, 3).unwrap(), 1);
        assert_eq!(kwise_naive(&r1, &r3, 3).unwrap(), 2);
        assert_eq!(kwise(&r1, &r2, 3, &t3).unwrap(), 1);
        assert_eq!(kwise(&r1, &r3, 3, &t3).unwrap(), 2);
        assert_eq!(kwise(&r1, &r2, 2, &t2).unwrap(), 1);
        assert_eq!(kwise(&r1, &r3, 2, &t2).unwrap(), 1);
    }

    #[test]
    fn naive_guards() {
        let a = Ranking::identity(21);
        assert!(matches!(kwise_naive(&a, &a, 3), Err(Error::EnumerationBudget { bound: 20, .. })));
        let b = Ranking::identity(16);
        assert!(matches!(kwise_naive(&b, &b, 6), Err(Error::EnumerationBudget { bound: 15, .. })));
        assert_eq!(kwise_naive(&b, &b, 5).unwrap(), 0);
        assert!(matches!(kwise_naive(&b, &b, 1), Err(Error::InvalidK { .. })));
    }

    #[test]
    fn kwise_rejects_wrong_table() {
        let a = Ranking::identity(4);
        let t = BinomialPrefixTable::new(5, 3).unwrap();
        assert!(matches!(kwise(&a, &a, 3, &t), Err(Error::WrongTable { .. })));
    }

    #[test]
    fn position_weighted_examples() {
        let a = r(&[0, 1, 2, 3]);
        let b = r(&[2, 0, 3, 1]);
        let ones = [1.0; 4];
        assert_eq!(position_weighted_kt(&a, &b, &ones).unwrap(), kendall_tau(&a, &b).unwrap() as f64);
        assert_eq!(position_weighted_kt(&a, &a, &[1.0, 3.0, 0.5, 2.0]).unwrap(), 0.0);
        let s2 = core::f64::consts::SQRT_2;
        let got = position_weighted_kt(&r(&[0, 1, 2]), &r(&[2, 0, 1]), &[1.0, s2, 1.0]).unwrap();
        let expected = (1.0 + s2) / 2.0 * s2 + (1.0 + s2) / 2.0;
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 2.914).abs() < 1e-3);
        assert_eq!(position_weighted_kt(&a, &b, &[1.0, 1.0]), Err(Error::InvalidWeights));
        assert_eq!(position_weighted_kt(&a, &b, &[2.0, 1.0, 1.0, 1.0]), Err(Error::InvalidWeights));
        assert_eq!(position_weighted_kt(&a, &b, &[1.0, -1.0, 1.0, 1.0]), Err(Error::InvalidWeights));
    }
}
