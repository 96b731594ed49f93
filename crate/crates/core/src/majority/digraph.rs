use alloc::vec;
use alloc::vec::Vec;

use super::counts::{check_pair, PairCounts};
use crate::binom::BinomialPrefixTable;
use crate::error::{Error, Result};
use crate::profile::{Candidate, Profile, SubsetMask};

/// Largest number of free candidates [`wk_max_exhaustive`] will enumerate.
pub const EXHAUSTIVE_FREE_MAX: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: Candidate,
    pub to: Candidate,
    /// `max_S w(S, from, to)`, always positive.
    pub weight: i64,
    /// A contest set attaining `weight`.
    pub witness: SubsetMask,
}

/// Weighted digraph over the candidates; at most one arc per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KwiseDigraph {
    m: usize,
    k: usize,
    arcs: Vec<Option<(i64, SubsetMask)>>,
}

impl KwiseDigraph {
    pub fn empty(m: usize, k: usize) -> Self {
        KwiseDigraph { m, k, arcs: vec![None; m * m] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn arc(&self, from: Candidate, to: Candidate) -> Option<Arc> {
        self.arcs[from.0 * self.m + to.0].map(|(weight, witness)| Arc { from, to, weight, witness })
    }

    pub fn has_arc(&self, from: Candidate, to: Candidate) -> bool {
        self.arcs[from.0 * self.m + to.0].is_some()
    }

    /// Adds or replaces an arc. Non-positive weights are not arcs and are ignored.
    pub fn insert(&mut self, arc: Arc) {
        if arc.weight > 0 && arc.from != arc.to {
            self.arcs[arc.from.0 * self.m + arc.to.0] = Some((arc.weight, arc.witness));
        }
    }

    pub fn remove(&mut self, from: Candidate, to: Candidate) -> Option<Arc> {
        let old = self.arc(from, to);
        self.arcs[from.0 * self.m + to.0] = None;
        old
    }

    /// Arcs ordered by `(from, to)`.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.m * self.m).filter_map(move |i| {
            self.arcs[i].map(|(weight, witness)| Arc {
                from: Candidate(i / self.m),
                to: Candidate(i % self.m),
                weight,
                witness,
            })
        })
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_some()).count()
    }

    pub fn successors(&self, c: Candidate) -> SubsetMask {
        (0..self.m).map(Candidate).filter(|&x| self.has_arc(c, x)).collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DigraphOptions {
    /// Allow the exponential construction required for `k >= 4`.
    pub force_exponential: bool,
}

/// Pairwise majority digraph, weighted by majority margins.
pub fn pairwise_digraph(profile: &Profile) -> KwiseDigraph {
    digraph_from_counts(&PairCounts::new(profile), 2)
}

fn digraph_from_counts(counts: &PairCounts, k: usize) -> KwiseDigraph {
    let m = counts.m();
    let mut g = KwiseDigraph::empty(m, k);
    for a in (0..m).map(Candidate) {
        for b in (0..m).map(Candidate).filter(|&b| b != a) {
            let (weight, witness) = if k == 2 {
                (counts.margin(a, b), SubsetMask::singleton(a).with(b))
            } else {
                counts.w3_max(a, b)
            };
            g.insert(Arc { from: a, to: b, weight, witness });
        }
    }
    g
}

/// The k-wise majority digraph.
///
/// `k = 2` and `k = 3` are polynomial. Larger `k` enumerates contest sets
/// for every pair and needs `options.force_exponential`.
pub fn kwise_digraph(profile: &Profile, k: usize, options: DigraphOptions) -> Result<KwiseDigraph> {
    let m = profile.m();
    if k < 2 || (m >= 2 && k > m) {
        return Err(Error::InvalidK { k, m });
    }
    match k {
        2 | 3 => Ok(digraph_from_counts(&PairCounts::new(profile), k)),
        _ if !options.force_exponential => Err(Error::ExponentialDigraph { k }),
        _ => {
            let table = BinomialPrefixTable::new(m, k)?;
            let mut g = KwiseDigraph::empty(m, k);
            for a in (0..m).map(Candidate) {
                for b in (0..m).map(Candidate).filter(|&b| b != a) {
                    let (weight, witness) =
                        exhaustive_max(profile, a, b, SubsetMask::EMPTY, SubsetMask::EMPTY, &table)?;
                    g.insert(Arc { from: a, to: b, weight, witness });
                }
            }
            Ok(g)
        }
    }
}

/// Maximum of `w(S, c, c')` over every `S` that contains `c`, `c'` and
/// `forced_in` and avoids `forced_out`, by enumerating the free candidates.
///
/// Deciding whether this maximum is positive is NP-hard for `k >= 4`, so
/// more than [`EXHAUSTIVE_FREE_MAX`] free candidates is refused.
pub fn wk_max_exhaustive(
    profile: &Profile,
    c: Candidate,
    c2: Candidate,
    k: usize,
    forced_in: SubsetMask,
    forced_out: SubsetMask,
) -> Result<(i64, SubsetMask)> {
    let m = profile.m();
    if k < 2 || k > m {
        return Err(Error::InvalidK { k, m });
    }
    let table = BinomialPrefixTable::new(m, k)?;
    exhaustive_max(profile, c, c2, forced_in, forced_out, &table)
}

pub(crate) fn exhaustive_max(
    profile: &Profile,
    c: Candidate,
    c2: Candidate,
    forced_in: SubsetMask,
    forced_out: SubsetMask,
    table: &BinomialPrefixTable,
) -> Result<(i64, SubsetMask)> {
    let m = profile.m();
    check_pair(m, c, c2)?;
    let all = SubsetMask::full(m);
    if !forced_in.is_subset_of(all) || !forced_out.is_subset_of(all) {
        return Err(Error::CandidateOutOfRange { candidate: ((forced_in | forced_out) - all).0.trailing_zeros() as usize, m });
    }
    let pair = SubsetMask::singleton(c).with(c2);
    if !forced_in.is_disjoint(forced_out) || !pair.is_disjoint(forced_out) {
        return Err(Error::ConflictingConstraints);
    }
    let base = pair | forced_in;
    let free = all - base - forced_out;
    if free.len() > EXHAUSTIVE_FREE_MAX {
        return Err(Error::EnumerationBudget {
            what: "k-wise arc weight (NP-hard for k >= 4)",
            size: free.len(),
            bound: EXHAUSTIVE_FREE_MAX,
        });
    }
    // per voter group: signed count and the candidates below its preferred one
    let terms: Vec<(i64, SubsetMask)> = profile
        .groups()
        .iter()
        .map(|g| {
            if g.ranking.prefers(c, c2) {
                (g.count as i64, g.ranking.below_set(c))
            } else {
                (-(g.count as i64), g.ranking.below_set(c2))
            }
        })
        .collect();
    let mut best: Option<(i64, SubsetMask)> = None;
    for extra in free.subsets() {
        let set = base | extra;
        // the other candidate of the pair is always below the winner, hence the - 1
        let w: i64 = terms.iter().map(|&(s, below)| s * table.prefix((below & set).len() - 1) as i64).sum();
        if best.is_none_or(|(bw, _)| w > bw) {
            best = Some((w, set));
        }
    }
    Ok(best.expect("at least the base set is enumerated"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Ranking;

    fn r(order: &[usize]) -> Ranking {
        Ranking::from_order(order).unwrap()
    }

    fn set(ids: &[usize]) -> SubsetMask {
        ids.iter().map(|&c| Candidate(c)).collect()
    }

    fn six_candidate_example() -> Profile {
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

    #[test]
    fn exhaustive_k3_matches_greedy() {
        let p = six_candidate_example();
        let counts = PairCounts::new(&p);
        for a in (0..6).map(Candidate) {
            for b in (0..6).map(Candidate).filter(|&b| b != a) {
                let (w, s) = wk_max_exhaustive(&p, a, b, 3, SubsetMask::EMPTY, SubsetMask::EMPTY).unwrap();
                assert_eq!(w, counts.w3_max(a, b).0);
                assert_eq!(counts.w3(s, a, b), w);
            }
        }
    }

    #[test]
    fn exhaustive_k2_is_margin() {
        let p = six_candidate_example();
        let counts = PairCounts::new(&p);
        let (w, s) = wk_max_exhaustive(&p, Candidate(0), Candidate(5), 2, SubsetMask::EMPTY, SubsetMask::EMPTY).unwrap();
        assert_eq!(w, counts.margin(Candidate(0), Candidate(5)));
        assert_eq!(s, set(&[0, 5]));
    }

    #[test]
    fn constrained_query() {
        let p = six_candidate_example();
        let (w, s) = wk_max_exhaustive(&p, Candidate(2), Candidate(3), 3, set(&[4, 5]), set(&[0, 1])).unwrap();
        assert_eq!((w, s), (-4, set(&[2, 3, 4, 5])));
    }

    #[test]
    fn exponential_construction_is_gated() {
        let p = six_candidate_example();
        assert_eq!(kwise_digraph(&p, 4, DigraphOptions::default()), Err(Error::ExponentialDigraph { k: 4 }));
        let forced = kwise_digraph(&p, 4, DigraphOptions { force_exponential: true }).unwrap();
        assert!(forced.arc_count() > 0);
        let three = kwise_digraph(&p, 3, DigraphOptions::default()).unwrap();
        assert_eq!(three.arc_count(), 17);
        assert_eq!(pairwise_digraph(&p).arc_count(), 14);
    }

    #[test]
    fn guard_on_free_candidates() {
        let p = Profile::from_rankings(23, [Ranking::identity(23)]).unwrap();
        let err = wk_max_exhaustive(&p, Candidate(0), Candidate(1), 4, SubsetMask::EMPTY, SubsetMask::EMPTY);
        assert!(matches!(err, Err(Error::EnumerationBudget { size: 21, bound: 20, .. })));
        let ok = wk_max_exhaustive(&p, Candidate(0), Candidate(1), 4, SubsetMask::EMPTY, set(&[22]));
        assert!(ok.is_ok());
    }
}
