//! Mutable undirected simple graph with an undo journal.
//!
//! The solver never copies the graph between search nodes. Every mutation
//! (vertex removal, edge insertion, vertex creation, fold) is appended to a
//! journal, and [`Graph::rollback`] replays the journal backwards to the
//! state captured by a [`Mark`]. Adjacency lists are kept sorted and are never
//! physically shrunk; dead vertices are skipped through the `alive` flags.

use std::fmt;

pub type Vertex = usize;

/// How a dead vertex left the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Removal {
    /// Placed in the vertex cover.
    Included,
    /// Discarded; all of its neighbours were already gone.
    Excluded,
    /// Swallowed by a fold; its status is decided during reconstruction.
    Folded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FoldKind {
    Degree2,
    Twin,
    Alternative,
}

/// Reconstruction data for a rewrite that removed vertices without deciding them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoldRecord {
    /// `center` had degree two with nonadjacent `ends`; `merged` replaces N[center].
    Degree2 {
        center: Vertex,
        ends: [Vertex; 2],
        merged: Vertex,
    },
    /// Two degree-3 vertices sharing an independent neighbourhood `shared`.
    Twin {
        twins: [Vertex; 2],
        shared: [Vertex; 3],
        merged: Vertex,
    },
    /// Alternative sets `a` and `b`; `a_side` = N(A)\N[B] and `b_side` = N(B)\N[A]
    /// at the moment of the rewrite.
    Alternative {
        a: Vec<Vertex>,
        b: Vec<Vertex>,
        a_side: Vec<Vertex>,
        b_side: Vec<Vertex>,
    },
}

impl FoldRecord {
    pub fn kind(&self) -> FoldKind {
        match self {
            FoldRecord::Degree2 { .. } => FoldKind::Degree2,
            FoldRecord::Twin { .. } => FoldKind::Twin,
            FoldRecord::Alternative { .. } => FoldKind::Alternative,
        }
    }

    /// Vertices removed by the rewrite whose status the record decides.
    pub fn removed(&self) -> Vec<Vertex> {
        match self {
            FoldRecord::Degree2 { center, ends, .. } => vec![*center, ends[0], ends[1]],
            FoldRecord::Twin { twins, shared, .. } => {
                vec![twins[0], twins[1], shared[0], shared[1], shared[2]]
            }
            FoldRecord::Alternative { a, b, .. } => a.iter().chain(b).copied().collect(),
        }
    }

    /// The vertex introduced by the rewrite, if any.
    pub fn merged(&self) -> Option<Vertex> {
        match self {
            FoldRecord::Degree2 { merged, .. } | FoldRecord::Twin { merged, .. } => Some(*merged),
            FoldRecord::Alternative { .. } => None,
        }
    }

    /// Cover size committed by the rewrite itself.
    pub fn cover_delta(&self) -> usize {
        match self {
            FoldRecord::Degree2 { .. } => 1,
            FoldRecord::Twin { .. } => 2,
            FoldRecord::Alternative { a, .. } => a.len(),
        }
    }

    /// Given whether the merged vertex is in the cover, returns the implied
    /// `(vertex, included)` assignment of the removed vertices.
    /// Returns `None` for alternative rewrites, which have no merged vertex.
    pub fn implied(&self, merged_in_cover: bool) -> Option<Vec<(Vertex, bool)>> {
        match self {
            FoldRecord::Degree2 { center, ends, .. } => Some(vec![
                (*center, !merged_in_cover),
                (ends[0], merged_in_cover),
                (ends[1], merged_in_cover),
            ]),
            FoldRecord::Twin { twins, shared, .. } => {
                let mut out: Vec<(Vertex, bool)> =
                    twins.iter().map(|&t| (t, !merged_in_cover)).collect();
                out.extend(shared.iter().map(|&s| (s, merged_in_cover)));
                Some(out)
            }
            FoldRecord::Alternative { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Event {
    Removed(Vertex),
    EdgeAdded(Vertex, Vertex),
    VertexAdded,
    Fold,
}

/// Handle returned by [`Graph::checkpoint`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mark {
    depth: usize,
    position: usize,
}

/// Full observable state, for equality checks around rollback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSnapshot {
    adj: Vec<Vec<Vertex>>,
    alive: Vec<bool>,
    degree: Vec<usize>,
    removal: Vec<Option<Removal>>,
    fold_of: Vec<Option<usize>>,
    folds: Vec<FoldRecord>,
    cover: usize,
    alive_count: usize,
    edge_count: usize,
    edges_inserted: usize,
}

#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    alive: Vec<bool>,
    degree: Vec<usize>,
    removal: Vec<Option<Removal>>,
    fold_of: Vec<Option<usize>>,
    folds: Vec<FoldRecord>,
    n_original: usize,
    alive_count: usize,
    edge_count: usize,
    edges_inserted: usize,
    cover: usize,
    events: Vec<Event>,
    checkpoints: Vec<usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n_total", &self.n_total())
            .field("alive", &self.alive_count)
            .field("edges", &self.edge_count)
            .field("cover", &self.cover)
            .finish()
    }
}

impl Graph {
    /// `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            alive: vec![true; n],
            degree: vec![0; n],
            removal: vec![None; n],
            fold_of: vec![None; n],
            folds: Vec::new(),
            n_original: n,
            alive_count: n,
            edge_count: 0,
            edges_inserted: 0,
            cover: 0,
            events: Vec::new(),
            checkpoints: Vec::new(),
        }
    }

    /// Builds a graph on `0..n`, dropping self-loops and duplicate edges.
    ///
    /// Panics if an endpoint is out of range.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            assert!(
                u < n && v < n,
                "edge ({u}, {v}) out of range for {n} vertices"
            );
            if u != v {
                g.adj[u].push(v);
                g.adj[v].push(u);
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        for v in 0..n {
            g.degree[v] = g.adj[v].len();
        }
        g.edge_count = g.degree.iter().sum::<usize>() / 2;
        g.edges_inserted = g.edge_count;
        g
    }

    /// Slots ever created, including fold vertices and dead ones.
    pub fn n_total(&self) -> usize {
        self.adj.len()
    }

    /// Number of vertices of the input graph; ids `0..n_original`.
    pub fn n_original(&self) -> usize {
        self.n_original
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges of the input plus every edge inserted by rewrites on the current path.
    pub fn edges_inserted(&self) -> usize {
        self.edges_inserted
    }

    pub fn is_empty(&self) -> bool {
        self.alive_count == 0
    }

    /// Size of the partial cover committed so far.
    pub fn cover_size(&self) -> usize {
        self.cover
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn removal(&self, v: Vertex) -> Option<Removal> {
        self.removal[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        assert!(self.is_alive(v), "degree of dead vertex {v}");
        self.degree[v]
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n_total()).filter(move |&v| self.alive[v])
    }

    /// N(v) over alive vertices, in increasing id order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        assert!(self.is_alive(v), "neighbourhood of dead vertex {v}");
        self.adj[v].iter().copied().filter(move |&u| self.alive[u])
    }

    /// Raw adjacency of `v`, dead entries included.
    pub(crate) fn raw_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn neighbor_vec(&self, v: Vertex) -> Vec<Vertex> {
        self.neighbors(v).collect()
    }

    /// N[v], sorted.
    pub fn closed(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = self.neighbor_vec(v);
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        out
    }

    /// N²(v): vertices at distance exactly two, sorted.
    pub fn n2(&self, v: Vertex) -> Vec<Vertex> {
        let closed = self.closed(v);
        let mut out: Vec<Vertex> = closed
            .iter()
            .filter(|&&u| u != v)
            .flat_map(|&u| self.neighbors(u))
            .filter(|w| closed.binary_search(w).is_err())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// N(S) = ⋃ N(v) \ S, sorted.
    pub fn n_of_set(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = set
            .iter()
            .flat_map(|&v| self.neighbors(v))
            .filter(|u| !set.contains(u))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether `u` and `v` are both alive and adjacent.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if !self.is_alive(u) || !self.is_alive(v) {
            return false;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Alive edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in self.alive_vertices() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of edges with both endpoints in `set` (which must be alive).
    pub fn edges_within(&self, set: &[Vertex]) -> usize {
        let mut count = 0;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Removes `v`, recording how it left.
    pub fn remove(&mut self, v: Vertex, how: Removal) {
        assert!(self.is_alive(v), "removing dead vertex {v}");
        self.alive[v] = false;
        self.removal[v] = Some(how);
        self.alive_count -= 1;
        self.edge_count -= self.degree[v];
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            if self.alive[u] {
                self.degree[u] -= 1;
            }
        }
        if how == Removal::Included {
            self.cover += 1;
        }
        self.events.push(Event::Removed(v));
        self.debug_check_around(v);
    }

    /// Puts `v` in the cover and deletes it.
    pub fn include(&mut self, v: Vertex) {
        self.remove(v, Removal::Included);
    }

    /// Discards `v` and puts all of N(v) in the cover. Returns N(v).
    pub fn exclude(&mut self, v: Vertex) -> Vec<Vertex> {
        let nbrs = self.neighbor_vec(v);
        for &u in &nbrs {
            self.remove(u, Removal::Included);
        }
        self.remove(v, Removal::Excluded);
        nbrs
    }

    /// Appends a fresh isolated vertex.
    pub fn add_vertex(&mut self) -> Vertex {
        let v = self.n_total();
        self.adj.push(Vec::new());
        self.alive.push(true);
        self.degree.push(0);
        self.removal.push(None);
        self.fold_of.push(None);
        self.alive_count += 1;
        self.events.push(Event::VertexAdded);
        v
    }

    /// Inserts edge `uv` between alive vertices. Returns false if it already existed.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "self-loop {u}");
        assert!(self.is_alive(u) && self.is_alive(v), "edge on dead vertex");
        let pos_u = match self.adj[u].binary_search(&v) {
            Ok(_) => return false,
            Err(p) => p,
        };
        let pos_v = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[u].insert(pos_u, v);
        self.adj[v].insert(pos_v, u);
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.edge_count += 1;
        self.edges_inserted += 1;
        self.events.push(Event::EdgeAdded(u, v));
        self.debug_check_around(u);
        true
    }

    /// Records a fold whose removals and insertions have already been applied.
    pub fn push_fold(&mut self, record: FoldRecord) {
        if let Some(w) = record.merged() {
            self.fold_of[w] = Some(self.folds.len());
        }
        self.cover += record.cover_delta();
        self.folds.push(record);
        self.events.push(Event::Fold);
    }

    /// The fold that introduced `v`, if `v` is a merged vertex.
    pub fn fold_introducing(&self, v: Vertex) -> Option<&FoldRecord> {
        self.fold_of
            .get(v)
            .copied()
            .flatten()
            .map(|i| &self.folds[i])
    }

    pub fn folds(&self) -> &[FoldRecord] {
        &self.folds
    }

    pub fn checkpoint(&mut self) -> Mark {
        self.checkpoints.push(self.events.len());
        Mark {
            depth: self.checkpoints.len() - 1,
            position: self.events.len(),
        }
    }

    /// Restores the state at `mark` and discards it and every deeper mark.
    ///
    /// Panics on a stale mark.
    pub fn rollback(&mut self, mark: Mark) {
        assert!(
            self.checkpoints.get(mark.depth) == Some(&mark.position),
            "stale checkpoint"
        );
        self.checkpoints.truncate(mark.depth);
        while self.events.len() > mark.position {
            let event = self.events.pop().expect("journal underflow");
            self.undo(event);
        }
    }

    fn undo(&mut self, event: Event) {
        match event {
            Event::Removed(v) => {
                if self.removal[v] == Some(Removal::Included) {
                    self.cover -= 1;
                }
                self.removal[v] = None;
                self.alive[v] = true;
                self.alive_count += 1;
                self.edge_count += self.degree[v];
                for i in 0..self.adj[v].len() {
                    let u = self.adj[v][i];
                    if self.alive[u] {
                        self.degree[u] += 1;
                    }
                }
            }
            Event::EdgeAdded(u, v) => {
                let pu = self.adj[u]
                    .binary_search(&v)
                    .expect("journaled edge missing");
                self.adj[u].remove(pu);
                let pv = self.adj[v]
                    .binary_search(&u)
                    .expect("journaled edge missing");
                self.adj[v].remove(pv);
                self.degree[u] -= 1;
                self.degree[v] -= 1;
                self.edge_count -= 1;
                self.edges_inserted -= 1;
            }
            Event::VertexAdded => {
                let adj = self.adj.pop().expect("vertex journal underflow");
                debug_assert!(adj.is_empty(), "created vertex still has edges at undo");
                let alive = self.alive.pop().unwrap_or(false);
                debug_assert!(alive);
                self.alive_count -= 1;
                self.degree.pop();
                self.removal.pop();
                self.fold_of.pop();
            }
            Event::Fold => {
                let record = self.folds.pop().expect("fold journal underflow");
                if let Some(w) = record.merged() {
                    self.fold_of[w] = None;
                }
                self.cover -= record.cover_delta();
            }
        }
    }

    /// Connected components of the alive vertices, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n_total()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in self.alive_vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `vertices` (alive), relabelled to `0..vertices.len()`
    /// in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n_total()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for u in self.neighbors(v) {
                let j = index[u];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(vertices.len(), &edges)
    }

    /// Assembles a cover of the input graph from the current partial solution.
    ///
    /// `extra` lists currently alive vertices chosen for the cover; every other
    /// alive vertex is treated as excluded. Folds are unwound newest first.
    /// Returns input-vertex ids, sorted.
    pub fn reconstruct(&self, extra: &[Vertex]) -> Vec<Vertex> {
        let mut in_cover: Vec<bool> = self
            .removal
            .iter()
            .map(|r| *r == Some(Removal::Included))
            .collect();
        for &v in extra {
            assert!(self.is_alive(v), "extra cover vertex {v} is not alive");
            in_cover[v] = true;
        }
        for record in self.folds.iter().rev() {
            match record {
                FoldRecord::Degree2 { merged, .. } | FoldRecord::Twin { merged, .. } => {
                    let w_in = in_cover[*merged];
                    in_cover[*merged] = false;
                    for (x, inc) in record.implied(w_in).expect("merged fold") {
                        in_cover[x] = inc;
                    }
                }
                FoldRecord::Alternative {
                    a,
                    b,
                    a_side,
                    b_side,
                } => {
                    let pick = if b_side.iter().all(|&x| in_cover[x]) {
                        a
                    } else {
                        debug_assert!(a_side.iter().all(|&x| in_cover[x]));
                        b
                    };
                    for &x in pick {
                        in_cover[x] = true;
                    }
                }
            }
        }
        (0..self.n_original).filter(|&v| in_cover[v]).collect()
    }

    pub fn snapshot(&self) -> GraphSnapshot {
        GraphSnapshot {
            adj: self.adj.clone(),
            alive: self.alive.clone(),
            degree: self.degree.clone(),
            removal: self.removal.clone(),
            fold_of: self.fold_of.clone(),
            folds: self.folds.clone(),
            cover: self.cover,
            alive_count: self.alive_count,
            edge_count: self.edge_count,
            edges_inserted: self.edges_inserted,
        }
    }

    /// Verifies symmetry, simplicity and the degree cache over alive vertices.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut alive = 0;
        let mut twice_edges = 0;
        for v in 0..self.n_total() {
            if !self.alive[v] {
                continue;
            }
            alive += 1;
            let list = &self.adj[v];
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adjacency of {v} not strictly sorted"));
            }
            if list.contains(&v) {
                return Err(format!("self-loop at {v}"));
            }
            let mut d = 0;
            for &u in list {
                if self.alive[u] {
                    d += 1;
                    if self.adj[u].binary_search(&v).is_err() {
                        return Err(format!("{v} lists {u} but not conversely"));
                    }
                }
            }
            if d != self.degree[v] {
                return Err(format!(
                    "degree cache of {v} is {} but actual {d}",
                    self.degree[v]
                ));
            }
            twice_edges += d;
        }
        if alive != self.alive_count {
            return Err("alive count mismatch".into());
        }
        if twice_edges != 2 * self.edge_count {
            return Err("edge count mismatch".into());
        }
        Ok(())
    }

    #[cfg(debug_assertions)]
    fn debug_check_around(&self, v: Vertex) {
        for &u in &self.adj[v] {
            if self.alive[u] {
                let d = self.adj[u].iter().filter(|&&x| self.alive[x]).count();
                debug_assert_eq!(d, self.degree[u], "degree cache broken at {u}");
            }
        }
    }

    #[cfg(not(debug_assertions))]
    fn debug_check_around(&self, _v: Vertex) {}
}

/// Whether `cover` touches every edge of `g` (alive edges only).
pub fn is_vertex_cover(g: &Graph, cover: &[Vertex]) -> bool {
    let mut mark = vec![false; g.n_total()];
    for &v in cover {
        if v < mark.len() {
            mark[v] = true;
        }
    }
    g.edges().iter().all(|&(u, v)| mark[u] || mark[v])
}
