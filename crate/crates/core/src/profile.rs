//! Candidates, rankings, subsets and preference profiles.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};

/// Widest candidate set a [`SubsetMask`] can hold.
pub const MAX_CANDIDATES: usize = 64;

/// Cap on `m` for anything that allocates `2^m` states.
pub const MAX_DP_CANDIDATES: usize = 30;

/// A candidate, identified by its dense index in `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate(pub usize);

impl Candidate {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0 + 1)
    }
}

/// A set of candidates stored as a bitset; bit `c` is set iff `c` is a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// All candidates `0..m`.
    #[inline]
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_CANDIDATES);
        if m == 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << m) - 1)
        }
    }

    #[inline]
    pub fn singleton(c: Candidate) -> Self {
        SubsetMask(1u64 << c.0)
    }

    pub fn from_candidates<I: IntoIterator<Item = Candidate>>(items: I) -> Self {
        items.into_iter().fold(SubsetMask::EMPTY, |acc, c| acc.with(c))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, c: Candidate) -> bool {
        c.0 < 64 && self.0 >> c.0 & 1 == 1
    }

    #[inline]
    pub fn with(self, c: Candidate) -> Self {
        SubsetMask(self.0 | 1u64 << c.0)
    }

    #[inline]
    pub fn without(self, c: Candidate) -> Self {
        SubsetMask(self.0 & !(1u64 << c.0))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest-id member.
    #[inline]
    pub fn first(self) -> Option<Candidate> {
        if self.0 == 0 {
            None
        } else {
            Some(Candidate(self.0.trailing_zeros() as usize))
        }
    }

    /// Members in ascending id order.
    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }

    /// Every `size`-subset of `0..m`, in increasing numeric order.
    pub fn subsets_of_size(m: usize, size: usize) -> SizedSubsets {
        debug_assert!(m < 64);
        let next = if size > m {
            None
        } else if size == 0 {
            Some(0)
        } else {
            Some((1u64 << size) - 1)
        };
        SizedSubsets { next, limit: 1u64 << m }
    }

    /// Every subset of `self` (including the empty set and `self`), in
    /// increasing numeric order.
    pub fn subsets(self) -> Subsets {
        Subsets { of: self.0, next: Some(0) }
    }
}

/// Gosper's hack over fixed-popcount masks.
#[derive(Debug, Clone)]
pub struct SizedSubsets {
    next: Option<u64>,
    limit: u64,
}

impl Iterator for SizedSubsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        if cur >= self.limit && cur != 0 {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ)
        };
        Some(SubsetMask(cur))
    }
}

#[derive(Debug, Clone)]
pub struct Subsets {
    of: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.of) & self.of;
        self.next = (succ != 0).then_some(succ);
        Some(SubsetMask(cur))
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & rhs.0)
    }
}

impl Sub for SubsetMask {
    type Output = SubsetMask;
    fn sub(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !rhs.0)
    }
}

impl Not for SubsetMask {
    type Output = SubsetMask;
    fn not(self) -> SubsetMask {
        SubsetMask(!self.0)
    }
}

impl IntoIterator for SubsetMask {
    type Item = Candidate;
    type IntoIter = MaskIter;
    fn into_iter(self) -> MaskIter {
        self.iter()
    }
}

impl FromIterator<Candidate> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = Candidate>>(iter: I) -> Self {
        SubsetMask::from_candidates(iter)
    }
}

#[derive(Debug, Clone)]
pub struct MaskIter(u64);

impl Iterator for MaskIter {
    type Item = Candidate;

    #[inline]
    fn next(&mut self) -> Option<Candidate> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(Candidate(c))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MaskIter {}

/// A strict total order over `m` candidates. Position 0 is the most preferred.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    order: Vec<u8>,
    position: Vec<u8>,
}

impl Ranking {
    /// Builds a ranking from candidate ids listed most-preferred first.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let m = order.len();
        if m == 0 {
            return Err(Error::NotAPermutation);
        }
        if m > MAX_CANDIDATES {
            return Err(Error::TooManyCandidates { m, max: MAX_CANDIDATES });
        }
        let mut position = vec![u8::MAX; m];
        for (p, &c) in order.iter().enumerate() {
            if c >= m || position[c] != u8::MAX {
                return Err(Error::NotAPermutation);
            }
            position[c] = p as u8;
        }
        Ok(Ranking {
            order: order.iter().map(|&c| c as u8).collect(),
            position,
        })
    }

    pub fn from_candidates(order: &[Candidate]) -> Result<Self> {
        let ids: Vec<usize> = order.iter().map(|c| c.0).collect();
        Self::from_order(&ids)
    }

    /// `c1 > c2 > ... > cm`.
    pub fn identity(m: usize) -> Self {
        assert!((1..=MAX_CANDIDATES).contains(&m));
        let order: Vec<u8> = (0..m as u8).collect();
        Ranking { position: order.clone(), order }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// Always false; a ranking has at least one candidate.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Candidate at 0-based position `p`.
    #[inline]
    pub fn at(&self, p: usize) -> Candidate {
        Candidate(self.order[p] as usize)
    }

    /// 0-based position of `c`.
    #[inline]
    pub fn position(&self, c: Candidate) -> usize {
        self.position[c.0] as usize
    }

    #[inline]
    pub fn prefers(&self, a: Candidate, b: Candidate) -> bool {
        self.position[a.0] < self.position[b.0]
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Candidate> + ExactSizeIterator + '_ {
        self.order.iter().map(|&c| Candidate(c as usize))
    }

    /// Raw ids most-preferred first; the order as stored, used by hot loops.
    #[inline]
    pub fn order_bytes(&self) -> &[u8] {
        &self.order
    }

    pub fn order_indices(&self) -> Vec<usize> {
        self.order.iter().map(|&c| c as usize).collect()
    }

    /// The member of `set` this ranking places highest.
    pub fn top_choice(&self, set: SubsetMask) -> Result<Candidate> {
        if set.is_empty() {
            return Err(Error::EmptyContestSet);
        }
        self.iter()
            .find(|&c| set.contains(c))
            .ok_or(Error::CandidateOutOfRange { candidate: set.0.trailing_zeros() as usize, m: self.len() })
    }

    /// Members of `set` in this ranking's relative order.
    pub fn restrict(&self, set: SubsetMask) -> Result<Vec<Candidate>> {
        if set.is_empty() {
            return Err(Error::EmptyContestSet);
        }
        if !set.is_subset_of(SubsetMask::full(self.len())) {
            return Err(Error::CandidateOutOfRange {
                candidate: (set - SubsetMask::full(self.len())).0.trailing_zeros() as usize,
                m: self.len(),
            });
        }
        Ok(self.iter().filter(|&c| set.contains(c)).collect())
    }

    /// Candidates ranked strictly below `c`.
    pub fn below_set(&self, c: Candidate) -> SubsetMask {
        self.order[self.position(c) + 1..]
            .iter()
            .fold(SubsetMask::EMPTY, |acc, &x| acc.with(Candidate(x as usize)))
    }

    /// Candidates ranked strictly above `c`.
    pub fn above_set(&self, c: Candidate) -> SubsetMask {
        self.order[..self.position(c)]
            .iter()
            .fold(SubsetMask::EMPTY, |acc, &x| acc.with(Candidate(x as usize)))
    }

    /// `below_set` for every candidate, indexed by candidate id.
    pub fn below_sets(&self) -> Vec<SubsetMask> {
        let mut out = vec![SubsetMask::EMPTY; self.len()];
        let mut acc = SubsetMask::EMPTY;
        for &c in self.order.iter().rev() {
            out[c as usize] = acc;
            acc = acc.with(Candidate(c as usize));
        }
        out
    }

    pub fn reversed(&self) -> Ranking {
        let order: Vec<usize> = self.order.iter().rev().map(|&c| c as usize).collect();
        Ranking::from_order(&order).expect("reverse of a permutation")
    }

    /// Renames every candidate `c` to `perm[c]`.
    pub fn relabel(&self, perm: &Ranking) -> Result<Ranking> {
        if perm.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: perm.len() });
        }
        let order: Vec<usize> = self.iter().map(|c| perm.at(c.0).0).collect();
        Ranking::from_order(&order)
    }

    /// Swaps the candidates at positions `p` and `p + 1`.
    pub fn swap_adjacent(&self, p: usize) -> Ranking {
        let mut order = self.order_indices();
        order.swap(p, p + 1);
        Ranking::from_order(&order).expect("swap keeps a permutation")
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ranking(")?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(">")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Voters sharing one ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoterGroup {
    pub ranking: Ranking,
    pub count: u64,
}

/// A multiset of rankings over the same `m` candidates.
///
/// Identical rankings are merged into a single group at construction; groups
/// keep the order in which each distinct ranking first appeared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    m: usize,
    n: u64,
    groups: Vec<VoterGroup>,
}

impl Profile {
    pub fn from_groups<I>(m: usize, groups: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Ranking, u64)>,
    {
        if m == 0 {
            return Err(Error::NotAPermutation);
        }
        if m > MAX_CANDIDATES {
            return Err(Error::TooManyCandidates { m, max: MAX_CANDIDATES });
        }
        let mut merged: Vec<VoterGroup> = Vec::new();
        let mut n: u64 = 0;
        for (ranking, count) in groups {
            if ranking.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: ranking.len() });
            }
            if count == 0 {
                return Err(Error::ZeroCount);
            }
            n = n.checked_add(count).ok_or(Error::Overflow)?;
            match merged.iter_mut().find(|g| g.ranking == ranking) {
                Some(g) => g.count += count,
                None => merged.push(VoterGroup { ranking, count }),
            }
        }
        if merged.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(Profile { m, n, groups: merged })
    }

    /// One voter per ranking.
    pub fn from_rankings<I: IntoIterator<Item = Ranking>>(m: usize, rankings: I) -> Result<Self> {
        Self::from_groups(m, rankings.into_iter().map(|r| (r, 1)))
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Total number of voters.
    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn groups(&self) -> &[VoterGroup] {
        &self.groups
    }

    pub fn candidates(&self) -> SubsetMask {
        SubsetMask::full(self.m)
    }

    /// Profile obtained by pooling the voters of both profiles.
    pub fn concat(&self, other: &Profile) -> Result<Profile> {
        if other.m != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: other.m });
        }
        Profile::from_groups(
            self.m,
            self.groups.iter().chain(other.groups.iter()).map(|g| (g.ranking.clone(), g.count)),
        )
    }

    /// Applies the candidate renaming `perm` to every voter.
    pub fn relabel(&self, perm: &Ranking) -> Result<Profile> {
        let groups: Result<Vec<_>> =
            self.groups.iter().map(|g| Ok((g.ranking.relabel(perm)?, g.count))).collect();
        Profile::from_groups(self.m, groups?)
    }

    /// Number of voters ranking `a` above `b`.
    pub fn support(&self, a: Candidate, b: Candidate) -> u64 {
        self.groups.iter().filter(|g| g.ranking.prefers(a, b)).map(|g| g.count).sum()
    }

    /// True when every voter ranks `a` above `b`.
    pub fn unanimous(&self, a: Candidate, b: Candidate) -> bool {
        self.groups.iter().all(|g| g.ranking.prefers(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(order: &[usize]) -> Ranking {
        Ranking::from_order(order).unwrap()
    }

    fn set(ids: &[usize]) -> SubsetMask {
        ids.iter().map(|&c| Candidate(c)).collect()
    }

    #[test]
    fn top_choice_examples() {
        assert_eq!(r(&[0, 1, 2]).top_choice(set(&[1, 2])).unwrap(), Candidate(1));
        // the 48 voters of the three-candidate example rank c3 first overall
        assert_eq!(r(&[2, 1, 0]).top_choice(set(&[0, 1, 2])).unwrap(), Candidate(2));
        assert_eq!(r(&[3, 0, 2, 1]).top_choice(set(&[2])).unwrap(), Candidate(2));
        assert_eq!(r(&[0, 1]).top_choice(SubsetMask::EMPTY), Err(Error::EmptyContestSet));
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(r(&[0, 1, 2]).restrict(set(&[0, 2])).unwrap(), vec![Candidate(0), Candidate(2)]);
        assert_eq!(
            r(&[0, 1, 2]).restrict(SubsetMask::full(3)).unwrap(),
            vec![Candidate(0), Candidate(1), Candidate(2)]
        );
        assert_eq!(r(&[0, 1]).restrict(SubsetMask::EMPTY), Err(Error::EmptyContestSet));
    }

    #[test]
    fn below_set_examples() {
        let x = r(&[0, 1, 2]);
        assert_eq!(x.below_set(Candidate(2)), SubsetMask::EMPTY);
        assert_eq!(x.below_set(Candidate(0)), set(&[1, 2]));
        assert_eq!(x.below_set(Candidate(1)), set(&[2]));
        assert_eq!(x.below_sets()[1], set(&[2]));
        assert_eq!(x.above_set(Candidate(2)), set(&[0, 1]));
    }

    #[test]
    fn rejects_non_permutations() {
        assert_eq!(Ranking::from_order(&[0, 0, 2]), Err(Error::NotAPermutation));
        assert_eq!(Ranking::from_order(&[0, 3, 1]), Err(Error::NotAPermutation));
        assert_eq!(Ranking::from_order(&[]), Err(Error::NotAPermutation));
    }

    #[test]
    fn profile_merges_duplicates() {
        let p = Profile::from_groups(3, [(r(&[0, 1, 2]), 2), (r(&[2, 1, 0]), 1), (r(&[0, 1, 2]), 3)])
            .unwrap();
        assert_eq!(p.n(), 6);
        assert_eq!(p.groups().len(), 2);
        assert_eq!(p.groups()[0].count, 5);
        assert_eq!(Profile::from_groups(3, [(r(&[0, 1, 2]), 0)]), Err(Error::ZeroCount));
        assert_eq!(Profile::from_groups(3, core::iter::empty()), Err(Error::EmptyProfile));
        assert!(matches!(
            Profile::from_groups(3, [(r(&[0, 1]), 1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subset_iterators() {
        let sizes: std::vec::Vec<usize> =
            (0..=5).map(|s| SubsetMask::subsets_of_size(5, s).count()).collect();
        assert_eq!(sizes, [1, 5, 10, 10, 5, 1]);
        assert!(SubsetMask::subsets_of_size(5, 3).all(|x| x.len() == 3 && x.0 < 32));
        assert_eq!(SubsetMask::subsets_of_size(3, 4).count(), 0);
        let of = set(&[1, 4, 6]);
        let all: std::vec::Vec<SubsetMask> = of.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset_of(of)));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(SubsetMask::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(alloc::format!("{}", r(&[2, 0, 1])), "c3>c1>c2");
    }
}
