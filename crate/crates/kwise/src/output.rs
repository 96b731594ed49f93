//! JSON documents printed by the command-line tool. Candidates are 1-based.

use kwise_core::majority::{Arc, KwiseDigraph, SccOrder};
use kwise_core::solver::ConsensusResult;
use serde::{Deserialize, Serialize};

use crate::format::one_based;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceOutput {
    pub k: usize,
    pub ranking: Vec<usize>,
    pub distance: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStatsOutput {
    pub states: u64,
    pub largest_block: usize,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutput {
    pub mode: String,
    pub k: usize,
    pub optimum: u64,
    pub rankings: Vec<Vec<usize>>,
    pub count: usize,
    pub truncated: bool,
    pub stats: SolveStatsOutput,
}

impl SolveOutput {
    pub fn new(mode: &str, k: usize, result: &ConsensusResult, millis: u64) -> Self {
        SolveOutput {
            mode: mode.to_string(),
            k,
            optimum: result.optimum,
            rankings: result.rankings.iter().map(one_based).collect(),
            count: result.rankings.len(),
            truncated: result.truncated,
            stats: SolveStatsOutput { states: result.stats.states, largest_block: result.stats.largest_block, millis },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcOutput {
    pub from: usize,
    pub to: usize,
    pub weight: i64,
    pub witness: Vec<usize>,
}

impl From<&Arc> for ArcOutput {
    fn from(a: &Arc) -> Self {
        ArcOutput { from: a.from.0 + 1, to: a.to.0 + 1, weight: a.weight, witness: a.witness.iter().map(|c| c.0 + 1).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphOutput {
    pub k: usize,
    pub arcs: Vec<ArcOutput>,
    /// Components in order, each listed in ascending candidate order.
    pub components: Vec<Vec<usize>>,
    pub order_unique: bool,
    /// Arcs dropped by refinement; empty without `--refine`.
    pub removed: Vec<ArcOutput>,
}

impl DigraphOutput {
    pub fn new(graph: &KwiseDigraph, order: &SccOrder, removed: &[Arc]) -> Self {
        DigraphOutput {
            k: graph.k(),
            arcs: graph.arcs().map(|a| ArcOutput::from(&a)).collect(),
            components: order.components.iter().map(|s| s.iter().map(|c| c.0 + 1).collect()).collect(),
            order_unique: order.order_unique,
            removed: removed.iter().map(ArcOutput::from).collect(),
        }
    }
}
