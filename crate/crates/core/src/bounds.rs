//! Lower bounds on the cover size of the remaining graph.

use crate::graph::{Graph, Vertex};
use crate::lp::{lp_bound, Matching};

/// Disjoint cliques covering every alive vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<Vertex>>,
}

impl CliqueCover {
    pub fn bound(&self) -> usize {
        self.cliques.iter().map(|c| c.len() - 1).sum()
    }

    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let mut seen = vec![false; g.n_total()];
        for c in &self.cliques {
            if c.is_empty() {
                return Err("empty clique".into());
            }
            if !g.is_clique(c) {
                return Err(format!("{c:?} is not a clique"));
            }
            for &v in c {
                if !g.is_alive(v) || std::mem::replace(&mut seen[v], true) {
                    return Err(format!("vertex {v} dead or covered twice"));
                }
            }
        }
        match g.alive_vertices().find(|&v| !seen[v]) {
            Some(v) => Err(format!("vertex {v} uncovered")),
            None => Ok(()),
        }
    }
}

/// Greedy clique cover: vertices in ascending degree order, each joining the
/// largest existing clique it is fully adjacent to (lowest index on ties).
pub fn clique_cover(g: &Graph) -> CliqueCover {
    let mut order: Vec<Vertex> = g.alive_vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut clique_of = vec![usize::MAX; g.n_total()];
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    let mut hits: Vec<usize> = Vec::new();
    let mut touched = Vec::new();
    for v in order {
        for u in g.neighbors(v) {
            let c = clique_of[u];
            if c != usize::MAX {
                if hits[c] == 0 {
                    touched.push(c);
                }
                hits[c] += 1;
            }
        }
        let mut pick: Option<usize> = None;
        for &c in &touched {
            if hits[c] == cliques[c].len() {
                let better = match pick {
                    None => true,
                    Some(p) => {
                        cliques[c].len() > cliques[p].len()
                            || (cliques[c].len() == cliques[p].len() && c < p)
                    }
                };
                if better {
                    pick = Some(c);
                }
            }
        }
        for &c in &touched {
            hits[c] = 0;
        }
        touched.clear();
        let c = pick.unwrap_or_else(|| {
            cliques.push(Vec::new());
            hits.push(0);
            cliques.len() - 1
        });
        cliques[c].push(v);
        clique_of[v] = c;
    }
    let cover = CliqueCover { cliques };
    debug_assert_eq!(cover.check(g), Ok(()));
    cover
}

/// Disjoint cycles (length ≥ 2) covering every alive vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    pub cycles: Vec<Vec<Vertex>>,
}

impl CycleCover {
    pub fn bound(&self) -> usize {
        self.cycles.iter().map(|c| c.len().div_ceil(2)).sum()
    }

    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let mut seen = vec![false; g.n_total()];
        for c in &self.cycles {
            if c.len() < 2 {
                return Err(format!("cycle {c:?} shorter than two"));
            }
            for i in 0..c.len() {
                let (u, v) = (c[i], c[(i + 1) % c.len()]);
                if !g.has_edge(u, v) {
                    return Err(format!("cycle {c:?} misses edge {u}-{v}"));
                }
                if std::mem::replace(&mut seen[u], true) {
                    return Err(format!("vertex {u} covered twice"));
                }
            }
        }
        match g.alive_vertices().find(|&v| !seen[v]) {
            Some(v) => Err(format!("vertex {v} uncovered")),
            None => Ok(()),
        }
    }

    /// Reads the cycles off a perfect matching of the double graph, then
    /// splits even cycles. `None` if the matching is not perfect.
    pub fn from_matching(g: &Graph, m: &Matching) -> Option<CycleCover> {
        if !m.is_perfect(g) {
            return None;
        }
        let mut seen = vec![false; g.n_total()];
        let mut cycles = Vec::new();
        for s in g.alive_vertices() {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = m.mate_of(v).expect("perfect matching");
            }
            debug_assert_eq!(v, s);
            cycles.push(cycle);
        }
        let mut cover = CycleCover { cycles };
        cover.split_even(g);
        debug_assert_eq!(cover.check(g), Ok(()));
        Some(cover)
    }

    /// Splits each even cycle at most once into two odd cycles: with positions
    /// `i`, `j` and edges `v_i v_{j+1}`, `v_j v_{i+1}` the cycle becomes
    /// `v_{i+1}..v_j` and `v_{j+1}..v_i`. Indices wrap around.
    pub fn split_even(&mut self, g: &Graph) {
        let mut pos = vec![usize::MAX; g.n_total()];
        let mut out = Vec::with_capacity(self.cycles.len());
        for cycle in self.cycles.drain(..) {
            let len = cycle.len();
            if len < 4 || len % 2 == 1 {
                out.push(cycle);
                continue;
            }
            for (i, &v) in cycle.iter().enumerate() {
                pos[v] = i;
            }
            let mut split = None;
            'scan: for i in 0..len {
                let vi = cycle[i];
                let vi1 = cycle[(i + 1) % len];
                for x in g.neighbors(vi1) {
                    let j = pos[x];
                    if j == usize::MAX || x == vi {
                        continue;
                    }
                    if (j + len - i) % 2 == 1 && g.has_edge(vi, cycle[(j + 1) % len]) {
                        split = Some((i, j));
                        break 'scan;
                    }
                }
            }
            match split {
                Some((i, j)) => {
                    let first: Vec<Vertex> = (1..=(j + len - i) % len)
                        .map(|k| cycle[(i + k) % len])
                        .collect();
                    let second: Vec<Vertex> = (1..=(i + len - j) % len)
                        .map(|k| cycle[(j + k) % len])
                        .collect();
                    out.push(first);
                    out.push(second);
                }
                None => out.push(cycle.clone()),
            }
            for &v in &cycle {
                pos[v] = usize::MAX;
            }
        }
        self.cycles = out;
    }
}

/// Which lower bounds the solver evaluates at each node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundLadder {
    /// Only the running cover size.
    L0,
    /// Clique cover.
    L1,
    /// LP relaxation.
    L2,
    /// Cycle cover.
    L3,
    /// Maximum of all three.
    L4,
}

impl BoundLadder {
    pub const ALL: [BoundLadder; 5] = [
        BoundLadder::L0,
        BoundLadder::L1,
        BoundLadder::L2,
        BoundLadder::L3,
        BoundLadder::L4,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BoundLadder::L0 => "l0",
            BoundLadder::L1 => "l1",
            BoundLadder::L2 => "l2",
            BoundLadder::L3 => "l3",
            BoundLadder::L4 => "l4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.label().eq_ignore_ascii_case(s))
    }

    fn uses_clique(self) -> bool {
        matches!(self, BoundLadder::L1 | BoundLadder::L4)
    }

    fn uses_lp(self) -> bool {
        matches!(self, BoundLadder::L2 | BoundLadder::L4)
    }

    fn uses_cycle(self) -> bool {
        matches!(self, BoundLadder::L3 | BoundLadder::L4)
    }

    fn uses_matching(self) -> bool {
        self.uses_lp() || self.uses_cycle()
    }
}

/// Cycle-cover bound, or the LP bound when the double graph has no perfect
/// matching (the cycle cover is only defined after LP reduction).
pub fn cycle_bound(g: &Graph, m: &Matching) -> usize {
    match CycleCover::from_matching(g, m) {
        Some(cover) => cover.bound(),
        None => lp_bound(m),
    }
}

/// Maximum of the enabled bounds. Repairs `m` if a matching-based bound is on.
pub fn combined_bound(g: &Graph, m: &mut Matching, ladder: BoundLadder) -> usize {
    if g.edge_count() == 0 {
        return 0;
    }
    let mut best = 0;
    if ladder.uses_clique() {
        best = best.max(clique_cover(g).bound());
    }
    if ladder.uses_matching() {
        m.repair(g);
        if ladder.uses_lp() {
            best = best.max(lp_bound(m));
        }
        if ladder.uses_cycle() {
            best = best.max(cycle_bound(g, m));
        }
    }
    best
}
