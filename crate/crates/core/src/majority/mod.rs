//! k-wise majority digraphs and the SCC decomposition of the aggregation problem.
//!
//! For a contest set `S` holding `c` and `c'`, `phi(S, c, c')` counts, over
//! voters, the subsets of `S` of size at most `k` that contain both and have
//! `c` on top; `w(S, c, c') = phi(S, c, c') - phi(S, c', c)` is what swapping
//! adjacent `c` and `c'` costs when exactly `S \ {c, c'}` sits below them.
//! The digraph has an arc `(c, c')` weighted by `max_S w(S, c, c')` whenever
//! that maximum is positive.
//!
//! Some consensus ranking is consistent with any topological order of the
//! digraph's strongly connected components, so the subset DP can be run on
//! each component separately ([`partitioned_dp`]), with every later
//! component treated as a fixed block ranked below.
//!
//! Computing the maximum is polynomial for `k = 3` (each candidate's
//! contribution is independent, see [`PairCounts::w3_max`]) and NP-hard for
//! `k >= 4`, where [`wk_max_exhaustive`] enumerates subsets under a guard.

mod counts;
mod digraph;
mod partition;
mod refine;
mod scc;

pub use counts::{phi3, phi_k, w3, w3_max, PairCounts};
pub use digraph::{
    kwise_digraph, pairwise_digraph, wk_max_exhaustive, Arc, DigraphOptions, KwiseDigraph,
    EXHAUSTIVE_FREE_MAX,
};
pub use partition::{
    partitioned_consensus, partitioned_dp, solve_preprocessed, solve_preprocessed_with, PreprocessOptions, Preprocessed,
};
pub use refine::{refine_digraph, Refinement};
pub use scc::{scc_decompose, SccOrder};
