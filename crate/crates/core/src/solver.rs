//! Exact k-wise Kemeny consensus.
//!
//! `d(S)`, the optimal k-wise cost of the profile restricted to `S`, obeys
//!
//! ```text
//! d(S) = min_{c in S} [ d(S \ {c}) + cost(S, c) ],   d({}) = 0
//! ```
//!
//! where `cost(S, c)` counts the disagreements on contest sets containing `c`
//! when `c` is put first among `S`. For a voter whose restriction to `S`
//! places `c` at 0-based position `q`, each `c'` at position `p < q` loses
//! `prefix(|S| - p - 2)` sets: the pair itself plus every choice of up to
//! `k - 2` of the candidates below `c'`, other than `c`. Summing over `p` is a
//! running total, so one pass over a voter's ranking yields `cost(S, c)` for
//! every `c` in `S` at once.

use alloc::vec;
use alloc::vec::Vec;

use crate::binom::BinomialPrefixTable;
use crate::distance::profile_distance_with;
use crate::error::{Error, Result};
use crate::profile::{Candidate, Profile, Ranking, SubsetMask, MAX_DP_CANDIDATES};

/// Largest `m` accepted by [`brute_force_consensus`].
pub const BRUTE_FORCE_MAX: usize = 8;

/// Default cap on the number of rankings returned by enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 10_000;

// polled every this many DP states
const INTERRUPT_STRIDE: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    /// DP states evaluated (or rankings scored, for brute force).
    pub states: u64,
    /// Size of the largest block solved as one subproblem.
    pub largest_block: usize,
}

/// Optimal value and optimal rankings for one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsensusResult {
    pub optimum: u64,
    /// Non-empty. Sorted by candidate order when more than one is returned.
    pub rankings: Vec<Ranking>,
    /// Set when enumeration stopped at its limit with rankings left over.
    pub truncated: bool,
    pub stats: SolveStats,
}

pub(crate) fn validate(profile: &Profile, k: usize) -> Result<()> {
    let m = profile.m();
    if m > MAX_DP_CANDIDATES {
        return Err(Error::TooManyCandidates { m, max: MAX_DP_CANDIDATES });
    }
    if k < 2 || (m >= 2 && k > m) {
        return Err(Error::InvalidK { k, m });
    }
    // every cost is at most n * m * 2^m
    profile
        .n()
        .checked_mul(m as u64)
        .and_then(|x| x.checked_mul(1u64 << m))
        .ok_or(Error::Overflow)?;
    Ok(())
}

fn trivial(profile: &Profile) -> ConsensusResult {
    ConsensusResult {
        optimum: 0,
        rankings: vec![Ranking::identity(profile.m())],
        truncated: false,
        stats: SolveStats { states: 1, largest_block: profile.m() },
    }
}

/// Cost scanner over a profile's voter groups.
///
/// Exposed so callers can drive the subset recursion themselves (for
/// instance one popcount layer at a time on several threads); every method
/// is a pure function of its inputs.
#[derive(Debug, Clone)]
pub struct SubsetDp<'a> {
    profile: &'a Profile,
    table: BinomialPrefixTable,
}

impl<'a> SubsetDp<'a> {
    pub fn new(profile: &'a Profile, k: usize) -> Result<Self> {
        validate(profile, k)?;
        let m = profile.m();
        // m = 1 has no contest sets; any k behaves like k = m
        let table = BinomialPrefixTable::new(m.max(2), k.min(m.max(2)))?;
        Ok(SubsetDp { profile, table })
    }

    pub(crate) fn with_table(profile: &'a Profile, table: BinomialPrefixTable) -> Self {
        SubsetDp { profile, table }
    }

    pub fn profile(&self) -> &Profile {
        self.profile
    }

    pub fn m(&self) -> usize {
        self.profile.m()
    }

    /// Writes `cost(universe, c)` into `costs[c]` for every `c` in `universe`:
    /// the disagreements on sets containing `c` incurred by placing `c` above
    /// every other member of `universe`. Entries outside `universe` are left
    /// untouched.
    pub fn first_place_costs(&self, universe: SubsetMask, costs: &mut [u64]) {
        let size = universe.len();
        for c in universe {
            costs[c.0] = 0;
        }
        for g in self.profile.groups() {
            let mut above = 0u64;
            let mut q = 0usize;
            for &c in g.ranking.order_bytes() {
                if universe.bits() >> c & 1 == 0 {
                    continue;
                }
                costs[c as usize] += g.count * above;
                q += 1;
                if q == size {
                    break;
                }
                above += self.table.prefix(size - q - 1);
            }
        }
    }

    /// Evaluates one state from already-final values of its subsets.
    ///
    /// `value_of(T)` must return `d(T)` for every `T = set \ {c}`. Returns
    /// `d(set)` and the mask of minimizing first candidates.
    pub fn evaluate<F>(&self, set: SubsetMask, value_of: F, costs: &mut [u64]) -> (u64, SubsetMask)
    where
        F: Fn(SubsetMask) -> u64,
    {
        self.evaluate_within(set, SubsetMask::EMPTY, value_of, costs)
    }

    /// As [`SubsetDp::evaluate`], with every member of `below` ranked after
    /// `set`: costs are taken over `set | below` but only members of `set`
    /// compete for first place.
    pub fn evaluate_within<F>(
        &self,
        set: SubsetMask,
        below: SubsetMask,
        value_of: F,
        costs: &mut [u64],
    ) -> (u64, SubsetMask)
    where
        F: Fn(SubsetMask) -> u64,
    {
        self.first_place_costs(set | below, costs);
        let mut best = u64::MAX;
        let mut argmin = SubsetMask::EMPTY;
        for c in set {
            let v = value_of(set.without(c)) + costs[c.0];
            if v < best {
                best = v;
                argmin = SubsetMask::singleton(c);
            } else if v == best {
                argmin = argmin.with(c);
            }
        }
        (best, argmin)
    }

    /// Runs the full recursion over all `2^m` subsets, by increasing size.
    pub fn build_table(&self, interrupt: &mut dyn FnMut() -> bool) -> Result<DpTable> {
        let m = self.m();
        let mut table = DpTable::new(m);
        let mut costs = vec![0u64; m];
        let mut evaluated = 0u64;
        for size in 1..=m {
            for set in SubsetMask::subsets_of_size(m, size) {
                if evaluated.is_multiple_of(INTERRUPT_STRIDE) && interrupt() {
                    return Err(Error::Interrupted);
                }
                let values = &table.values;
                let (v, arg) = self.evaluate(set, |t| values[t.bits() as usize], &mut costs);
                table.set(set, v, arg);
                evaluated += 1;
            }
        }
        Ok(table)
    }
}

/// Optimal restricted costs and first-place argmins for every subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    m: usize,
    values: Vec<u64>,
    argmin: Vec<u32>,
}

impl DpTable {
    /// Empty table for `m` candidates; only `d({}) = 0` is set.
    pub fn new(m: usize) -> Self {
        assert!(m <= MAX_DP_CANDIDATES);
        DpTable { m, values: vec![0; 1 << m], argmin: vec![0; 1 << m] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn value(&self, set: SubsetMask) -> u64 {
        self.values[set.bits() as usize]
    }

    /// Candidates that may be ranked first in an optimal ranking of `set`.
    #[inline]
    pub fn argmin(&self, set: SubsetMask) -> SubsetMask {
        SubsetMask(self.argmin[set.bits() as usize] as u64)
    }

    #[inline]
    pub fn set(&mut self, set: SubsetMask, value: u64, argmin: SubsetMask) {
        self.values[set.bits() as usize] = value;
        self.argmin[set.bits() as usize] = argmin.bits() as u32;
    }

    pub fn optimum(&self) -> u64 {
        self.value(SubsetMask::full(self.m))
    }

    /// Number of evaluated states, `2^m - 1`.
    pub fn states(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// Follows the lowest-id argmin from the full set downwards.
    pub fn first_ranking(&self) -> Ranking {
        let order = descend_lowest(SubsetMask::full(self.m), |s| self.argmin(s));
        Ranking::from_candidates(&order).expect("argmin chain is a permutation")
    }

    /// All optimal rankings, depth first with lower ids first, at most `limit`.
    pub fn all_rankings(&self, limit: usize) -> (Vec<Ranking>, bool) {
        let (orders, truncated) = enumerate_chains(SubsetMask::full(self.m), |s| self.argmin(s), limit);
        let rankings = orders
            .into_iter()
            .map(|o| Ranking::from_candidates(&o).expect("argmin chain is a permutation"))
            .collect();
        (rankings, truncated)
    }
}

pub(crate) fn descend_lowest<F: Fn(SubsetMask) -> SubsetMask>(from: SubsetMask, argmin: F) -> Vec<Candidate> {
    let mut order = Vec::with_capacity(from.len());
    let mut rest = from;
    while let Some(c) = argmin(rest).first() {
        order.push(c);
        rest = rest.without(c);
    }
    debug_assert!(rest.is_empty());
    order
}

/// Every argmin chain from `from` down to the empty set, capped at `limit`.
pub(crate) fn enumerate_chains<F: Fn(SubsetMask) -> SubsetMask>(
    from: SubsetMask,
    argmin: F,
    limit: usize,
) -> (Vec<Vec<Candidate>>, bool) {
    let mut out = Vec::new();
    if limit == 0 {
        return (out, true);
    }
    let mut prefix: Vec<Candidate> = Vec::with_capacity(from.len());
    // stack of (remaining set, untried choices at this depth)
    let mut stack: Vec<(SubsetMask, SubsetMask)> = vec![(from, argmin(from))];
    while let Some((rest, choices)) = stack.last_mut() {
        let rest = *rest;
        if rest.is_empty() {
            if out.len() == limit {
                return (out, true);
            }
            out.push(prefix.clone());
            stack.pop();
            prefix.pop();
            continue;
        }
        match choices.first() {
            Some(c) => {
                *choices = choices.without(c);
                prefix.push(c);
                let next = rest.without(c);
                stack.push((next, argmin(next)));
            }
            None => {
                stack.pop();
                prefix.pop();
            }
        }
    }
    (out, false)
}

/// Cost of ranking `c` first among `set`: the disagreements, summed over
/// voters, on contest sets inside `set` that contain `c`.
pub fn local_cost(
    set: SubsetMask,
    c: Candidate,
    profile: &Profile,
    k: usize,
    table: &BinomialPrefixTable,
) -> Result<u64> {
    if !set.contains(c) {
        return Err(Error::CandidateNotInSet { candidate: c.0 });
    }
    if !set.is_subset_of(profile.candidates()) {
        return Err(Error::CandidateOutOfRange { candidate: (set - profile.candidates()).0.trailing_zeros() as usize, m: profile.m() });
    }
    table.check(profile.m(), k)?;
    let size = set.len();
    let mut total = 0u64;
    for g in profile.groups() {
        let mut above = 0u64;
        for (q, x) in g.ranking.iter().filter(|&x| set.contains(x)).enumerate() {
            if x == c {
                total = g.count.checked_mul(above).and_then(|v| total.checked_add(v)).ok_or(Error::Overflow)?;
                break;
            }
            above += table.prefix(size - q - 2);
        }
    }
    Ok(total)
}

/// Scores all `m!` rankings. Refuses `m > 8`.
pub fn brute_force_consensus(profile: &Profile, k: usize) -> Result<ConsensusResult> {
    let m = profile.m();
    if m > BRUTE_FORCE_MAX {
        return Err(Error::EnumerationBudget { what: "brute-force consensus", size: m, bound: BRUTE_FORCE_MAX });
    }
    validate(profile, k)?;
    if m == 1 {
        return Ok(trivial(profile));
    }
    let table = BinomialPrefixTable::new(m, k)?;
    let mut best = u64::MAX;
    let mut winners: Vec<Ranking> = Vec::new();
    let mut states = 0u64;
    // Heap's algorithm, iterative form
    let mut perm: Vec<usize> = (0..m).collect();
    let mut counters = vec![0usize; m];
    let mut visit = |perm: &[usize]| -> Result<()> {
        let r = Ranking::from_order(perm)?;
        let d = profile_distance_with(&r, profile, &table)?;
        states += 1;
        if d < best {
            best = d;
            winners.clear();
            winners.push(r);
        } else if d == best {
            winners.push(r);
        }
        Ok(())
    };
    visit(&perm)?;
    let mut i = 1;
    while i < m {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(j, i);
            visit(&perm)?;
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    winners.sort();
    Ok(ConsensusResult {
        optimum: best,
        rankings: winners,
        truncated: false,
        stats: SolveStats { states, largest_block: m },
    })
}

/// The full DP table for `profile`.
pub fn dp_table(profile: &Profile, k: usize) -> Result<DpTable> {
    SubsetDp::new(profile, k)?.build_table(&mut || false)
}

/// One optimal ranking; ties broken towards the lowest candidate id at each
/// position.
pub fn dp_consensus(profile: &Profile, k: usize) -> Result<ConsensusResult> {
    dp_consensus_with(profile, k, &mut || false)
}

/// [`dp_consensus`] that polls `interrupt` and stops with
/// [`Error::Interrupted`] once it returns true.
pub fn dp_consensus_with(
    profile: &Profile,
    k: usize,
    interrupt: &mut dyn FnMut() -> bool,
) -> Result<ConsensusResult> {
    let dp = SubsetDp::new(profile, k)?;
    if profile.m() == 1 {
        return Ok(trivial(profile));
    }
    let table = dp.build_table(interrupt)?;
    Ok(ConsensusResult {
        optimum: table.optimum(),
        rankings: vec![table.first_ranking()],
        truncated: false,
        stats: SolveStats { states: table.states(), largest_block: profile.m() },
    })
}

/// Every optimal ranking, up to `limit` of them.
pub fn enumerate_consensus(profile: &Profile, k: usize, limit: usize) -> Result<ConsensusResult> {
    enumerate_consensus_with(profile, k, limit, &mut || false)
}

pub fn enumerate_consensus_with(
    profile: &Profile,
    k: usize,
    limit: usize,
    interrupt: &mut dyn FnMut() -> bool,
) -> Result<ConsensusResult> {
    let dp = SubsetDp::new(profile, k)?;
    if profile.m() == 1 {
        return Ok(trivial(profile));
    }
    let table = dp.build_table(interrupt)?;
    let (rankings, truncated) = table.all_rankings(limit);
    Ok(ConsensusResult {
        optimum: table.optimum(),
        rankings,
        truncated,
        stats: SolveStats { states: table.states(), largest_block: profile.m() },
    })
}
