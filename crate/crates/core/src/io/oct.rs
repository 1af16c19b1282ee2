//! Odd cycle transversal through vertex cover on the doubled graph.
//!
//! Ĝ has `l_v = v` and `r_v = n + v`, edges `l_u l_v` and `r_u r_v` for every
//! edge `uv`, plus `l_v r_v` for every vertex.

use crate::graph::{is_vertex_cover, Graph, Vertex};
use crate::solver::{solve, SolveResult, SolverConfig};

#[derive(Clone, Debug)]
pub struct OctInstance {
    pub original: Graph,
    pub doubled: Graph,
}

impl OctInstance {
    pub fn left(&self, v: Vertex) -> Vertex {
        v
    }

    pub fn right(&self, v: Vertex) -> Vertex {
        self.original.n_total() + v
    }
}

pub fn oct_reduce(g: &Graph) -> OctInstance {
    let n = g.n_total();
    let mut edges = Vec::with_capacity(2 * g.edge_count() + n);
    for (u, v) in g.edges() {
        edges.push((u, v));
        edges.push((n + u, n + v));
    }
    for v in g.alive_vertices() {
        edges.push((v, n + v));
    }
    OctInstance {
        original: g.clone(),
        doubled: Graph::from_edges(2 * n, &edges),
    }
}

/// Vertices with both copies in `cover`. Panics if `cover` is not a vertex
/// cover of Ĝ.
pub fn oct_extract(inst: &OctInstance, cover: &[Vertex]) -> Vec<Vertex> {
    assert!(
        is_vertex_cover(&inst.doubled, cover),
        "not a vertex cover of the doubled graph"
    );
    let n = inst.original.n_total();
    let mut in_cover = vec![false; 2 * n];
    for &x in cover {
        in_cover[x] = true;
    }
    (0..n).filter(|&v| in_cover[v] && in_cover[n + v]).collect()
}

#[derive(Clone, Debug)]
pub struct OctResult {
    pub transversal: Vec<Vertex>,
    pub solve: SolveResult,
}

pub fn solve_oct(g: &Graph, cfg: &SolverConfig) -> OctResult {
    let inst = oct_reduce(g);
    let solve = solve(&inst.doubled, cfg);
    OctResult {
        transversal: oct_extract(&inst, &solve.cover),
        solve,
    }
}
