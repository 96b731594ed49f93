use alloc::vec;
use alloc::vec::Vec;

use super::digraph::{kwise_digraph, Arc, DigraphOptions, KwiseDigraph};
use super::refine::{check_partition, refine_digraph};
use super::scc::{scc_decompose, SccOrder};
use crate::binom::BinomialPrefixTable;
use crate::error::{Error, Result};
use crate::profile::{Candidate, Profile, Ranking, SubsetMask, MAX_DP_CANDIDATES};
use crate::solver::{ConsensusResult, DpTable, SolveStats, SubsetDp};

const INTERRUPT_STRIDE: u64 = 4096;

struct Block {
    members: Vec<Candidate>,
    table: DpTable,
}

impl Block {
    fn expand(&self, local: SubsetMask) -> SubsetMask {
        local.iter().map(|j| self.members[j.0]).collect()
    }

    fn to_candidates(&self, local: &Ranking) -> impl Iterator<Item = Candidate> + '_ {
        local.iter().map(|j| self.members[j.0]).collect::<Vec<_>>().into_iter()
    }
}

fn check_k(profile: &Profile, k: usize) -> Result<BinomialPrefixTable> {
    let m = profile.m();
    if k < 2 || (m >= 2 && k > m) {
        return Err(Error::InvalidK { k, m });
    }
    let m2 = m.max(2);
    let table = BinomialPrefixTable::new(m2, k.min(m2))?;
    // no contest set is counted more than once per voter
    let sets = (m as u64 * m as u64).checked_mul(table.prefix(m2)).ok_or(Error::Overflow)?;
    profile.n().checked_mul(sets).and_then(|x| x.checked_mul(2)).ok_or(Error::Overflow)?;
    Ok(table)
}

fn solve_blocks(
    profile: &Profile,
    k: usize,
    order: &SccOrder,
    interrupt: &mut dyn FnMut() -> bool,
) -> Result<(Vec<Block>, u64, SolveStats)> {
    check_partition(order, profile.m())?;
    if let Some(size) = order.components.iter().map(|b| b.len()).find(|&s| s > MAX_DP_CANDIDATES) {
        return Err(Error::ComponentTooLarge { size, max: MAX_DP_CANDIDATES });
    }
    let dp = SubsetDp::with_table(profile, check_k(profile, k)?);
    let mut costs = vec![0u64; profile.m()];
    let mut stats = SolveStats::default();
    let mut total = 0u64;
    let mut blocks = Vec::with_capacity(order.components.len());
    for i in 0..order.components.len() {
        let comp = order.components[i];
        let below = order.below(i);
        let members: Vec<Candidate> = comp.iter().collect();
        let s = members.len();
        let mut block = Block { members, table: DpTable::new(s) };
        for size in 1..=s {
            for local in SubsetMask::subsets_of_size(s, size) {
                if stats.states % INTERRUPT_STRIDE == 0 && interrupt() {
                    return Err(Error::Interrupted);
                }
                dp.first_place_costs(block.expand(local) | below, &mut costs);
                let mut best = u64::MAX;
                let mut argmin = SubsetMask::EMPTY;
                for j in local {
                    let v = block.table.value(local.without(j)) + costs[block.members[j.0].0];
                    if v < best {
                        best = v;
                        argmin = SubsetMask::singleton(j);
                    } else if v == best {
                        argmin = argmin.with(j);
                    }
                }
                block.table.set(local, best, argmin);
                stats.states += 1;
            }
        }
        total = total.checked_add(block.table.optimum()).ok_or(Error::Overflow)?;
        stats.largest_block = stats.largest_block.max(s);
        blocks.push(block);
    }
    Ok((blocks, total, stats))
}

/// Subset DP run separately on each component of `order`, with every later
/// component held fixed below the current one.
///
/// Returns one ranking consistent with `order`, lowest ids first within each
/// component. The optimum equals the unrestricted one whenever `order` comes
/// from the k-wise majority digraph or its refinement.
pub fn partitioned_dp(profile: &Profile, k: usize, order: &SccOrder) -> Result<ConsensusResult> {
    partitioned_with(profile, k, order, None, &mut || false)
}

/// As [`partitioned_dp`], but returns every optimal ranking consistent with
/// `order`, at most `limit` of them.
pub fn partitioned_consensus(profile: &Profile, k: usize, order: &SccOrder, limit: usize) -> Result<ConsensusResult> {
    partitioned_with(profile, k, order, Some(limit), &mut || false)
}

fn partitioned_with(
    profile: &Profile,
    k: usize,
    order: &SccOrder,
    limit: Option<usize>,
    interrupt: &mut dyn FnMut() -> bool,
) -> Result<ConsensusResult> {
    let (blocks, optimum, stats) = solve_blocks(profile, k, order, interrupt)?;
    let (rankings, truncated) = match limit {
        None => {
            let order: Vec<Candidate> = blocks.iter().flat_map(|b| b.to_candidates(&b.table.first_ranking())).collect();
            (vec![Ranking::from_candidates(&order)?], false)
        }
        Some(limit) => combine(&blocks, limit)?,
    };
    Ok(ConsensusResult { optimum, rankings, truncated, stats })
}

// cartesian product of per-block optimal subrankings, in lexicographic order
fn combine(blocks: &[Block], limit: usize) -> Result<(Vec<Ranking>, bool)> {
    let mut truncated = false;
    let mut options: Vec<Vec<Vec<Candidate>>> = Vec::with_capacity(blocks.len());
    for b in blocks {
        let (local, t) = b.table.all_rankings(limit.max(1));
        truncated |= t;
        options.push(local.iter().map(|r| b.to_candidates(r).collect()).collect());
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; blocks.len()];
    loop {
        if out.len() == limit {
            return Ok((out, true));
        }
        let order: Vec<Candidate> = digits.iter().zip(&options).flat_map(|(&d, o)| o[d].iter().copied()).collect();
        out.push(Ranking::from_candidates(&order)?);
        // odometer, last block fastest
        let mut i = blocks.len();
        loop {
            if i == 0 {
                return Ok((out, truncated));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < options[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Options for [`solve_preprocessed_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PreprocessOptions {
    /// Run [`refine_digraph`] before solving.
    pub refine: bool,
    pub digraph: DigraphOptions,
    /// Enumerate up to this many consensus rankings instead of returning one.
    pub limit: Option<usize>,
}

/// Consensus computed through the majority digraph, with the intermediate
/// structures kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub result: ConsensusResult,
    /// The digraph the order was taken from, after refinement if requested.
    pub digraph: KwiseDigraph,
    pub order: SccOrder,
    /// Arcs dropped by refinement.
    pub removed: Vec<Arc>,
}

/// Builds the k-wise majority digraph, splits it into components, optionally
/// refines, and runs [`partitioned_dp`].
pub fn solve_preprocessed(profile: &Profile, k: usize, refine: bool) -> Result<Preprocessed> {
    let options = PreprocessOptions { refine, ..PreprocessOptions::default() };
    solve_preprocessed_with(profile, k, &options, &mut || false)
}

pub fn solve_preprocessed_with(
    profile: &Profile,
    k: usize,
    options: &PreprocessOptions,
    interrupt: &mut dyn FnMut() -> bool,
) -> Result<Preprocessed> {
    check_k(profile, k)?;
    let graph = kwise_digraph(profile, k, options.digraph)?;
    let order = scc_decompose(&graph);
    let (digraph, order, removed) = if options.refine {
        let r = refine_digraph(&graph, profile, &order)?;
        (r.digraph, r.order, r.removed)
    } else {
        (graph, order, Vec::new())
    };
    let result = partitioned_with(profile, k, &order, options.limit, interrupt)?;
    Ok(Preprocessed { result, digraph, order, removed })
}
