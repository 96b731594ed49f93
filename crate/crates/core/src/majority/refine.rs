use alloc::vec::Vec;

use super::counts::PairCounts;
use super::digraph::{exhaustive_max, Arc, KwiseDigraph};
use super::scc::{topological, SccOrder};
use crate::binom::BinomialPrefixTable;
use crate::error::{Error, Result};
use crate::profile::{Candidate, Profile, SubsetMask};

/// Outcome of [`refine_digraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub digraph: KwiseDigraph,
    /// Component order after refinement. Every input component is split in
    /// place, so this order refines the one passed in.
    pub order: SccOrder,
    /// Arcs removed, in removal order.
    pub removed: Vec<Arc>,
    /// Passes run, including the final one that removed nothing.
    pub passes: usize,
}

/// Removes arcs inside components that no consistent placement can support.
///
/// When `c` and `c'` are adjacent in a ranking consistent with `order`, the
/// candidates below them include every later component and exclude every
/// earlier one, as well as anything all voters rank above both. For each
/// arc `(c, c')` inside a component the weight is recomputed over contest
/// sets obeying those constraints and the arc is dropped if it is no longer
/// positive. Components are then split along their own strongly connected
/// components and the process repeats until nothing changes.
pub fn refine_digraph(graph: &KwiseDigraph, profile: &Profile, order: &SccOrder) -> Result<Refinement> {
    let m = profile.m();
    let k = graph.k();
    if graph.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: graph.m() });
    }
    check_partition(order, m)?;
    let counts = PairCounts::new(profile);
    let table = if k >= 4 { Some(BinomialPrefixTable::new(m, k)?) } else { None };
    let unanimous: Vec<SubsetMask> = (0..m).map(|c| counts.unanimously_above(Candidate(c))).collect();

    let mut digraph = graph.clone();
    let mut order = order.clone();
    let mut removed = Vec::new();
    let mut passes = 0;
    let cap = (m * m).max(1);
    while passes < cap {
        passes += 1;
        let before = removed.len();
        for i in 0..order.components.len() {
            let comp = order.components[i];
            if comp.len() < 2 {
                continue;
            }
            let above = order.above(i);
            let below = order.below(i);
            for c in comp {
                for c2 in comp {
                    if c == c2 || !digraph.has_arc(c, c2) {
                        continue;
                    }
                    let pair = SubsetMask::singleton(c).with(c2);
                    let forced_out = (above | (unanimous[c.0] & unanimous[c2.0])) - pair;
                    let forced_in = below - forced_out;
                    let weight = match (k, &table) {
                        (2, _) => counts.margin(c, c2),
                        (3, _) => counts.w3_max_constrained(c, c2, forced_in, forced_out)?.0,
                        (_, Some(t)) => exhaustive_max(profile, c, c2, forced_in, forced_out, t)?.0,
                        _ => unreachable!("table exists for k >= 4"),
                    };
                    if weight <= 0 {
                        removed.extend(digraph.remove(c, c2));
                    }
                }
            }
        }
        if removed.len() == before {
            break;
        }
        order = split_components(&digraph, &order);
    }
    Ok(Refinement { digraph, order, removed, passes })
}

pub(crate) fn check_partition(order: &SccOrder, m: usize) -> Result<()> {
    let mut seen = SubsetMask::EMPTY;
    for &comp in &order.components {
        if comp.is_empty() || !comp.is_disjoint(seen) {
            return Err(Error::InvalidOrder);
        }
        seen = seen | comp;
    }
    if seen != SubsetMask::full(m) {
        return Err(Error::InvalidOrder);
    }
    Ok(())
}

fn split_components(graph: &KwiseDigraph, order: &SccOrder) -> SccOrder {
    let m = graph.m();
    let mut components = Vec::new();
    for &comp in &order.components {
        if comp.len() < 2 {
            components.push(comp);
            continue;
        }
        let succ: Vec<SubsetMask> = (0..m).map(|c| graph.successors(Candidate(c)) & comp).collect();
        let inner = strong_components(&succ, comp);
        components.extend(topological(&succ, inner).components);
    }
    // consecutive components without an arc between them can be swapped
    let order_unique = components.windows(2).all(|w| w[0].iter().any(|c| !graph.successors(c).is_disjoint(w[1])));
    SccOrder { components, order_unique }
}

// mutual reachability inside `within`; components are small, so closure by BFS is fine
fn strong_components(succ: &[SubsetMask], within: SubsetMask) -> Vec<SubsetMask> {
    let reach = |from: Candidate| {
        let mut seen = SubsetMask::singleton(from);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier.iter().fold(SubsetMask::EMPTY, |acc, c| acc | succ[c.0]) - seen;
            seen = seen | next;
            frontier = next;
        }
        seen
    };
    let reach_sets: Vec<(Candidate, SubsetMask)> = within.iter().map(|c| (c, reach(c))).collect();
    let mut out = Vec::new();
    let mut assigned = SubsetMask::EMPTY;
    for &(c, rc) in &reach_sets {
        if assigned.contains(c) {
            continue;
        }
        let comp: SubsetMask = reach_sets.iter().filter(|(x, rx)| rc.contains(*x) && rx.contains(c)).map(|(x, _)| *x).collect();
        assigned = assigned | comp;
        out.push(comp);
    }
    out
}
