use alloc::vec;
use alloc::vec::Vec;

use crate::binom::BinomialPrefixTable;
use crate::error::{Error, Result};
use crate::profile::{Candidate, Profile, SubsetMask};

pub(crate) fn check_pair(m: usize, c: Candidate, c2: Candidate) -> Result<()> {
    for x in [c, c2] {
        if x.0 >= m {
            return Err(Error::CandidateOutOfRange { candidate: x.0, m });
        }
    }
    if c == c2 {
        return Err(Error::IdenticalPair { candidate: c.0 });
    }
    Ok(())
}

fn check_in_set(set: SubsetMask, m: usize, c: Candidate, c2: Candidate) -> Result<()> {
    check_pair(m, c, c2)?;
    for x in [c, c2] {
        if !set.contains(x) {
            return Err(Error::CandidateNotInSet { candidate: x.0 });
        }
    }
    if !set.is_subset_of(SubsetMask::full(m)) {
        return Err(Error::CandidateOutOfRange { candidate: (set - SubsetMask::full(m)).0.trailing_zeros() as usize, m });
    }
    Ok(())
}

/// `phi(S, c, c')` for `k = 3`: every voter with `c` above `c'` contributes
/// the pair itself plus one triple per member of `S` it ranks below `c`.
pub fn phi3(profile: &Profile, set: SubsetMask, c: Candidate, c2: Candidate) -> Result<u64> {
    check_in_set(set, profile.m(), c, c2)?;
    let others = set.without(c).without(c2);
    Ok(profile
        .groups()
        .iter()
        .filter(|g| g.ranking.prefers(c, c2))
        .map(|g| g.count * (1 + (g.ranking.below_set(c) & others).len() as u64))
        .sum())
}

/// `phi(S, c, c')` for the table's `k`: a voter with `c` above `c'` contributes
/// every choice of at most `k - 2` further members of `S` below `c`.
pub fn phi_k(
    profile: &Profile,
    set: SubsetMask,
    c: Candidate,
    c2: Candidate,
    table: &BinomialPrefixTable,
) -> Result<u64> {
    check_in_set(set, profile.m(), c, c2)?;
    table.check(profile.m(), table.k())?;
    let others = set.without(c).without(c2);
    profile.groups().iter().filter(|g| g.ranking.prefers(c, c2)).try_fold(0u64, |acc, g| {
        let free = (g.ranking.below_set(c) & others).len();
        g.count.checked_mul(table.prefix(free)).and_then(|v| acc.checked_add(v)).ok_or(Error::Overflow)
    })
}

/// `w(S, c, c') = phi3(S, c, c') - phi3(S, c', c)`.
pub fn w3(profile: &Profile, set: SubsetMask, c: Candidate, c2: Candidate) -> Result<i64> {
    Ok(phi3(profile, set, c, c2)? as i64 - phi3(profile, set, c2, c)? as i64)
}

/// Maximum of `w3` over contest sets holding `c` and `c'`, with the
/// maximizing set.
pub fn w3_max(profile: &Profile, c: Candidate, c2: Candidate) -> Result<(i64, SubsetMask)> {
    check_pair(profile.m(), c, c2)?;
    Ok(PairCounts::new(profile).w3_max(c, c2))
}

/// Pairwise and conditional pairwise support counts of a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCounts {
    m: usize,
    n: u64,
    // prefer[a * m + b] = voters with a above b
    prefer: Vec<u64>,
    // joint[(c * m + c2) * m + x] = voters with c above both c2 and x
    joint: Vec<u64>,
}

impl PairCounts {
    pub fn new(profile: &Profile) -> Self {
        let m = profile.m();
        let mut prefer = vec![0u64; m * m];
        let mut joint = vec![0u64; m * m * m];
        for g in profile.groups() {
            let order = g.ranking.order_bytes();
            for (i, &c) in order.iter().enumerate() {
                let c = c as usize;
                for &b in &order[i + 1..] {
                    prefer[c * m + b as usize] += g.count;
                }
                // c is above every later pair (c2, x), including c2 == x
                for &c2 in &order[i + 1..] {
                    let base = (c * m + c2 as usize) * m;
                    for &x in &order[i + 1..] {
                        joint[base + x as usize] += g.count;
                    }
                }
            }
        }
        PairCounts { m, n: profile.n(), prefer, joint }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `|P_{a > b}|`.
    #[inline]
    pub fn prefer(&self, a: Candidate, b: Candidate) -> u64 {
        self.prefer[a.0 * self.m + b.0]
    }

    /// `|P_{c > c'} & P_{c > x}|`.
    #[inline]
    pub fn joint(&self, c: Candidate, c2: Candidate, x: Candidate) -> u64 {
        self.joint[(c.0 * self.m + c2.0) * self.m + x.0]
    }

    /// Pairwise majority margin `|P_{c > c'}| - |P_{c' > c}|`.
    #[inline]
    pub fn margin(&self, c: Candidate, c2: Candidate) -> i64 {
        self.prefer(c, c2) as i64 - self.prefer(c2, c) as i64
    }

    /// Change in `w3(S, c, c')` from adding `x` to `S`.
    #[inline]
    pub fn gain(&self, c: Candidate, c2: Candidate, x: Candidate) -> i64 {
        self.joint(c, c2, x) as i64 - self.joint(c2, c, x) as i64
    }

    /// `w3(S, c, c')` for a set containing both candidates.
    pub fn w3(&self, set: SubsetMask, c: Candidate, c2: Candidate) -> i64 {
        let others = set.without(c).without(c2);
        self.margin(c, c2) + others.iter().map(|x| self.gain(c, c2, x)).sum::<i64>()
    }

    /// Maximum of `w3(S, c, c')` and the set attaining it: `{c, c'}` plus
    /// every `x` with positive gain.
    pub fn w3_max(&self, c: Candidate, c2: Candidate) -> (i64, SubsetMask) {
        self.w3_max_constrained(c, c2, SubsetMask::EMPTY, SubsetMask::EMPTY)
            .expect("unconstrained maximum always exists")
    }

    /// Maximum of `w3(S, c, c')` over sets containing `forced_in` and
    /// avoiding `forced_out`. Gains are additive, so taking each free
    /// candidate iff its gain is positive stays exact under the constraints.
    pub fn w3_max_constrained(
        &self,
        c: Candidate,
        c2: Candidate,
        forced_in: SubsetMask,
        forced_out: SubsetMask,
    ) -> Result<(i64, SubsetMask)> {
        let pair = SubsetMask::singleton(c).with(c2);
        if !forced_in.is_disjoint(forced_out) || !pair.is_disjoint(forced_out) {
            return Err(Error::ConflictingConstraints);
        }
        let mut set = pair | forced_in;
        let mut weight = self.w3(set, c, c2);
        let free = SubsetMask::full(self.m) - set - forced_out;
        for x in free {
            let g = self.gain(c, c2, x);
            if g > 0 {
                weight += g;
                set = set.with(x);
            }
        }
        Ok((weight, set))
    }

    /// Candidates every voter ranks above `c`.
    pub fn unanimously_above(&self, c: Candidate) -> SubsetMask {
        (0..self.m)
            .map(Candidate)
            .filter(|&x| x != c && self.prefer(x, c) == self.n)
            .collect()
    }
}
