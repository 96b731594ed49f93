use alloc::vec;
use alloc::vec::Vec;

use super::digraph::KwiseDigraph;
use crate::profile::{Candidate, SubsetMask};

/// Strongly connected components in a topological order of the condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccOrder {
    /// Earlier components are ranked above later ones.
    pub components: Vec<SubsetMask>,
    /// True when the condensation admits exactly one topological order.
    pub order_unique: bool,
}

impl SccOrder {
    /// Index of the component holding `c`.
    pub fn component_of(&self, c: Candidate) -> Option<usize> {
        self.components.iter().position(|s| s.contains(c))
    }

    pub fn largest(&self) -> usize {
        self.components.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Union of the components after position `i`.
    pub fn below(&self, i: usize) -> SubsetMask {
        self.components[i + 1..].iter().fold(SubsetMask::EMPTY, |acc, &s| acc | s)
    }

    /// Union of the components before position `i`.
    pub fn above(&self, i: usize) -> SubsetMask {
        self.components[..i].iter().fold(SubsetMask::EMPTY, |acc, &s| acc | s)
    }

    /// Whether `order` ranks every component above the ones after it.
    pub fn is_consistent(&self, order: &[Candidate]) -> bool {
        let idx: Vec<Option<usize>> = order.iter().map(|&c| self.component_of(c)).collect();
        idx.iter().all(Option::is_some) && idx.windows(2).all(|w| w[0] <= w[1])
    }
}

struct Tarjan<'a> {
    succ: &'a [SubsetMask],
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    on_stack: SubsetMask,
    stack: Vec<Candidate>,
    next: usize,
    out: Vec<SubsetMask>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: Candidate) {
        self.index[v.0] = Some(self.next);
        self.low[v.0] = self.next;
        self.next += 1;
        self.stack.push(v);
        self.on_stack = self.on_stack.with(v);
        for w in self.succ[v.0] {
            match self.index[w.0] {
                None => {
                    self.visit(w);
                    self.low[v.0] = self.low[v.0].min(self.low[w.0]);
                }
                Some(iw) if self.on_stack.contains(w) => self.low[v.0] = self.low[v.0].min(iw),
                Some(_) => {}
            }
        }
        if Some(self.low[v.0]) == self.index[v.0] {
            let mut comp = SubsetMask::EMPTY;
            while let Some(w) = self.stack.pop() {
                self.on_stack = self.on_stack.without(w);
                comp = comp.with(w);
                if w == v {
                    break;
                }
            }
            self.out.push(comp);
        }
    }
}

/// Tarjan's algorithm followed by Kahn's algorithm on the condensation.
///
/// Among components with no remaining predecessor the one holding the
/// smallest candidate id goes first, so the order is deterministic.
pub fn scc_decompose(graph: &KwiseDigraph) -> SccOrder {
    let m = graph.m();
    let succ: Vec<SubsetMask> = (0..m).map(|c| graph.successors(Candidate(c))).collect();
    let mut t = Tarjan {
        succ: &succ,
        index: vec![None; m],
        low: vec![0; m],
        on_stack: SubsetMask::EMPTY,
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for c in (0..m).map(Candidate) {
        if t.index[c.0].is_none() {
            t.visit(c);
        }
    }
    topological(&succ, t.out)
}

pub(crate) fn topological(succ: &[SubsetMask], comps: Vec<SubsetMask>) -> SccOrder {
    let n = comps.len();
    let reach = |a: usize| comps[a].iter().fold(SubsetMask::EMPTY, |acc, c| acc | succ[c.0]) - comps[a];
    let edges: Vec<Vec<bool>> =
        (0..n).map(|a| (0..n).map(|b| a != b && !reach(a).is_disjoint(comps[b])).collect()).collect();
    let mut indegree: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| edges[a][b]).count()).collect();
    let mut done = vec![false; n];
    let mut components = Vec::with_capacity(n);
    let mut order_unique = true;
    for _ in 0..n {
        let ready: Vec<usize> = (0..n).filter(|&i| !done[i] && indegree[i] == 0).collect();
        if ready.len() > 1 {
            order_unique = false;
        }
        let pick = *ready
            .iter()
            .min_by_key(|&&i| comps[i].first().map(|c| c.0))
            .expect("condensation is acyclic");
        done[pick] = true;
        components.push(comps[pick]);
        for b in 0..n {
            if edges[pick][b] {
                indegree[b] -= 1;
            }
        }
    }
    SccOrder { components, order_unique }
}
