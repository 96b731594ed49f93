//! k-wise Kemeny rank aggregation.
//!
//! The k-wise Kendall tau distance counts the subsets of at most `k`
//! candidates on which two rankings name a different top choice; `k = 2`
//! recovers the ordinary Kendall tau distance. This crate provides:
//!
//!  - the data model ([`Ranking`], [`Profile`], [`SubsetMask`]),
//!  - the distance itself, in closed form and by direct enumeration
//!    ([`distance`]),
//!  - an exact consensus solver by dynamic programming over candidate
//!    subsets, plus a brute-force reference ([`solver`]),
//!  - the k-wise majority digraph and the SCC-based decomposition of the
//!    aggregation problem ([`majority`]),
//!  - Mallows and impartial-culture profile generators ([`sampling`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and the
//! command-line front end live in the companion `kwise` crate.
//!
//! ```
//! use kwise_core::{Profile, Ranking, solver};
//!
//! let profile = Profile::from_groups(3, [
//!     (Ranking::from_order(&[0, 1, 2]).unwrap(), 49),
//!     (Ranking::from_order(&[2, 1, 0]).unwrap(), 48),
//!     (Ranking::from_order(&[1, 2, 0]).unwrap(), 3),
//! ]).unwrap();
//! let result = solver::dp_consensus(&profile, 3).unwrap();
//! assert_eq!(result.optimum, 201);
//! assert_eq!(result.rankings[0].order_indices(), vec![0, 1, 2]);
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod binom;
pub mod distance;
mod error;
pub mod majority;
mod profile;
pub mod sampling;
pub mod solver;

pub use binom::BinomialPrefixTable;
pub use error::{Error, Result};
pub use profile::{Candidate, Profile, Ranking, SubsetMask, VoterGroup, MAX_CANDIDATES, MAX_DP_CANDIDATES};
