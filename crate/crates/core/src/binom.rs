//! Truncated binomial row sums.
//!
//! Every cost in the k-wise setting reduces to counting subsets of size at
//! most `k - 2` drawn from some `p` candidates, i.e. `sum_{i=0}^{k-2} C(p, i)`.
//! The table is filled once per `(m, k)` from Pascal's rule.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialPrefixTable {
    m: usize,
    k: usize,
    // binom[p * width + i] = C(p, i) for p in 0..=m, i in 0..=k-2
    binom: Vec<u64>,
    // sums[p * width + j] = sum_{i <= j} C(p, i)
    sums: Vec<u64>,
}

impl BinomialPrefixTable {
    /// Table for `m` candidates and contest sets of size at most `k`.
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if k < 2 || k > m {
            return Err(Error::InvalidK { k, m });
        }
        let width = k - 1;
        let rows = m + 1;
        let mut binom = vec![0u64; rows * width];
        for p in 0..rows {
            binom[p * width] = 1;
            for i in 1..width.min(p + 1) {
                let above = binom[(p - 1) * width + i];
                let left = binom[(p - 1) * width + i - 1];
                binom[p * width + i] = above.checked_add(left).ok_or(Error::Overflow)?;
            }
        }
        let mut sums = vec![0u64; rows * width];
        for p in 0..rows {
            let mut acc = 0u64;
            for j in 0..width {
                acc = acc.checked_add(binom[p * width + j]).ok_or(Error::Overflow)?;
                sums[p * width + j] = acc;
            }
        }
        Ok(BinomialPrefixTable { m, k, binom, sums })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest subset size counted, `k - 2`.
    #[inline]
    pub fn cap(&self) -> usize {
        self.k - 2
    }

    /// `sum_{i=0}^{k-2} C(p, i)`: the number of subsets of a `p`-set with at
    /// most `k - 2` elements.
    #[inline]
    pub fn prefix(&self, p: usize) -> u64 {
        self.sums[p * (self.k - 1) + self.k - 2]
    }

    /// `sum_{i=0}^{cap} C(p, i)` for any `cap <= k - 2`.
    #[inline]
    pub fn prefix_with_cap(&self, p: usize, cap: usize) -> u64 {
        debug_assert!(cap <= self.cap());
        self.sums[p * (self.k - 1) + cap]
    }

    /// `C(p, i)` for `i <= k - 2`.
    #[inline]
    pub fn binom(&self, p: usize, i: usize) -> u64 {
        debug_assert!(i <= self.cap());
        self.binom[p * (self.k - 1) + i]
    }

    /// Fails unless the table was built for exactly `(m, k)`.
    pub fn check(&self, m: usize, k: usize) -> Result<()> {
        if self.m == m && self.k == k {
            Ok(())
        } else {
            Err(Error::WrongTable { m, k, table_m: self.m, table_k: self.k })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_binom(p: u64, i: u64) -> u64 {
        if i > p {
            return 0;
        }
        // u128 keeps 20! exact
        let f = |x: u64| (1..=x as u128).product::<u128>();
        (f(p) / (f(i) * f(p - i))) as u64
    }

    #[test]
    fn matches_factorials() {
        for m in 2..=20 {
            for k in 2..=m {
                let t = BinomialPrefixTable::new(m, k).unwrap();
                for p in 0..=m {
                    let mut acc = 0;
                    for i in 0..=k - 2 {
                        assert_eq!(t.binom(p, i), factorial_binom(p as u64, i as u64), "C({p},{i})");
                        acc += factorial_binom(p as u64, i as u64);
                        assert_eq!(t.prefix_with_cap(p, i), acc);
                    }
                    assert_eq!(t.prefix(p), acc);
                }
            }
        }
    }

    #[test]
    fn pascal_consistency() {
        let t = BinomialPrefixTable::new(16, 9).unwrap();
        for p in 1..=16 {
            assert_eq!(t.prefix_with_cap(p, 0), 1);
            for cap in 1..=t.cap() {
                assert_eq!(
                    t.prefix_with_cap(p, cap),
                    t.prefix_with_cap(p - 1, cap) + t.prefix_with_cap(p - 1, cap - 1)
                );
            }
        }
    }

    #[test]
    fn k_two_counts_only_the_empty_set() {
        let t = BinomialPrefixTable::new(7, 2).unwrap();
        assert!((0..=7).all(|p| t.prefix(p) == 1));
    }

    #[test]
    fn full_k_is_power_of_two() {
        let t = BinomialPrefixTable::new(30, 30).unwrap();
        assert_eq!(t.prefix(28), 1 << 28);
        assert_eq!(t.prefix(29), (1 << 29) - 1);
    }

    #[test]
    fn rejects_bad_k_and_wrong_use() {
        assert_eq!(BinomialPrefixTable::new(3, 1), Err(Error::InvalidK { k: 1, m: 3 }));
        assert_eq!(BinomialPrefixTable::new(3, 4), Err(Error::InvalidK { k: 4, m: 3 }));
        let t = BinomialPrefixTable::new(5, 3).unwrap();
        assert!(t.check(5, 3).is_ok());
        assert_eq!(t.check(6, 3), Err(Error::WrongTable { m: 6, k: 3, table_m: 5, table_k: 3 }));
    }
}
