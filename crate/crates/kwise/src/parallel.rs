use kwise_core::solver::{ConsensusResult, DpTable, SolveStats, SubsetDp};
use kwise_core::{Profile, Result, SubsetMask};
use rayon::prelude::*;

/// The subset DP with each popcount layer evaluated on the rayon pool.
///
/// States of one layer only read the previous layers, so the table is
/// identical to [`kwise_core::solver::dp_table`] for any thread count.
pub fn par_dp_table(profile: &Profile, k: usize) -> Result<DpTable> {
    let dp = SubsetDp::new(profile, k)?;
    let m = dp.m();
    let mut table = DpTable::new(m);
    for size in 1..=m {
        let layer: Vec<SubsetMask> = SubsetMask::subsets_of_size(m, size).collect();
        let done = &table;
        let results: Vec<(u64, SubsetMask)> = layer
            .par_iter()
            .map_init(|| vec![0u64; m], |costs, &set| dp.evaluate(set, |t| done.value(t), costs))
            .collect();
        for (set, (value, argmin)) in layer.into_iter().zip(results) {
            table.set(set, value, argmin);
        }
    }
    Ok(table)
}

/// [`kwise_core::solver::dp_consensus`] on the rayon pool.
pub fn par_dp_consensus(profile: &Profile, k: usize) -> Result<ConsensusResult> {
    let table = par_dp_table(profile, k)?;
    Ok(ConsensusResult {
        optimum: table.optimum(),
        rankings: vec![table.first_ranking()],
        truncated: false,
        stats: SolveStats { states: table.states(), largest_block: profile.m() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kwise_core::sampling::impartial_culture;
    use kwise_core::solver::{dp_consensus, dp_table};

    #[test]
    fn identical_to_sequential() {
        for (m, k, seed) in [(1, 2, 0), (5, 3, 1), (9, 4, 2), (10, 10, 3)] {
            let p = impartial_culture(m, 20, seed).unwrap();
            assert_eq!(par_dp_table(&p, k).unwrap(), dp_table(&p, k).unwrap());
            if m > 1 {
                assert_eq!(par_dp_consensus(&p, k).unwrap(), dp_consensus(&p, k).unwrap());
            }
        }
    }
}
