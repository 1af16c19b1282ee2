//! Graph, packing store and LP matching moved together through the search.

use crate::graph::{Graph, GraphSnapshot, Mark, Removal, Vertex};
use crate::lp::Matching;
use crate::packing::{ConstraintStore, StoreMark, StoreSnapshot};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateMark {
    graph: Mark,
    packing: StoreMark,
}

/// Every decision goes through here so the packing store sees it.
///
/// The matching is not journaled. It is a cache that [`Matching::repair`]
/// sanitizes against the current graph before each use.
#[derive(Clone, Debug)]
pub struct SearchState {
    pub graph: Graph,
    pub packing: ConstraintStore,
    pub matching: Matching,
}

impl SearchState {
    pub fn new(graph: Graph) -> Self {
        let n = graph.n_total();
        SearchState {
            graph,
            packing: ConstraintStore::new(n),
            matching: Matching::new(),
        }
    }

    pub fn checkpoint(&mut self) -> StateMark {
        StateMark {
            graph: self.graph.checkpoint(),
            packing: self.packing.checkpoint(),
        }
    }

    pub fn rollback(&mut self, mark: StateMark) {
        self.packing.rollback(mark.packing);
        self.graph.rollback(mark.graph);
        self.packing.resize_vars(self.graph.n_total());
    }

    pub fn include(&mut self, v: Vertex) {
        self.graph.include(v);
        self.decided(v, true);
    }

    /// Puts N(v) in the cover and discards `v`. Returns N(v).
    pub fn exclude(&mut self, v: Vertex) -> Vec<Vertex> {
        let nbrs = self.graph.neighbor_vec(v);
        for &u in &nbrs {
            self.include(u);
        }
        self.graph.remove(v, Removal::Excluded);
        self.decided(v, false);
        nbrs
    }

    /// Removes `v` as part of a fold; its status stays open.
    pub fn remove_folded(&mut self, v: Vertex) {
        self.graph.remove(v, Removal::Folded);
    }

    pub fn add_vertex(&mut self) -> Vertex {
        let v = self.graph.add_vertex();
        self.packing.resize_vars(self.graph.n_total());
        v
    }

    /// Reports a decision to the store. Deciding a merged vertex also decides
    /// the originals it stands for, recursively through nested folds.
    fn decided(&mut self, v: Vertex, included: bool) {
        if self.packing.is_idle() {
            return;
        }
        let mut pending = vec![(v, included)];
        while let Some((x, inc)) = pending.pop() {
            self.packing.on_decide(x, inc);
            if let Some(implied) = self.graph.fold_introducing(x).and_then(|r| r.implied(inc)) {
                pending.extend(implied);
            }
        }
    }

    pub fn snapshot(&self) -> (GraphSnapshot, StoreSnapshot) {
        (self.graph.snapshot(), self.packing.snapshot())
    }
}
