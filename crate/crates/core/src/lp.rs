//! Half-integral LP relaxation of vertex cover via the bipartite double graph.
//!
//! The double graph has a left copy `l_v` and a right copy `r_v` of every
//! alive vertex and edges `l_u r_v`, `l_v r_u` for each edge `uv`. Its
//! maximum matching size equals twice the LP optimum. A matching is stored as
//! `mate_left[v]` (the `u` such that `l_v r_u` is matched) and `mate_right`.

use crate::graph::{Graph, Vertex};

const FREE: usize = usize::MAX;
const INF: usize = usize::MAX;

#[derive(Clone, Debug, Default)]
pub struct Matching {
    mate_left: Vec<usize>,
    mate_right: Vec<usize>,
    size: usize,
}

impl Matching {
    pub fn new() -> Self {
        Matching::default()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `u` with `l_v r_u` matched.
    pub fn mate_of(&self, v: Vertex) -> Option<Vertex> {
        self.mate_left.get(v).copied().filter(|&u| u != FREE)
    }

    /// Every alive left copy is matched.
    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.size == g.alive_count()
    }

    /// Recomputes a maximum matching from scratch.
    pub fn max_matching(&mut self, g: &Graph) -> usize {
        let n = g.n_total();
        self.mate_left = vec![FREE; n];
        self.mate_right = vec![FREE; n];
        self.size = 0;
        self.augment(g);
        self.size
    }

    /// Drops pairs that no longer exist in `g` and re-augments to a maximum.
    /// Falls back to a full recompute when more than half of the alive
    /// vertices lost their pair.
    pub fn repair(&mut self, g: &Graph) -> usize {
        let invalid = self.sanitize(g);
        if 2 * invalid > g.alive_count() {
            return self.max_matching(g);
        }
        self.augment(g);
        self.size
    }

    fn sanitize(&mut self, g: &Graph) -> usize {
        let n = g.n_total();
        self.mate_left.resize(n, FREE);
        self.mate_right.resize(n, FREE);
        let mut invalid = 0;
        for v in 0..n {
            let u = self.mate_left[v];
            if u == FREE {
                continue;
            }
            if u >= n || !g.has_edge(v, u) || self.mate_right[u] != v {
                self.mate_left[v] = FREE;
                if u < n && self.mate_right[u] == v {
                    self.mate_right[u] = FREE;
                }
                invalid += 1;
            }
        }
        for u in 0..n {
            let v = self.mate_right[u];
            if v != FREE && (v >= n || self.mate_left[v] != u) {
                self.mate_right[u] = FREE;
            }
        }
        self.size = self.mate_left.iter().filter(|&&u| u != FREE).count();
        invalid
    }

    /// Hopcroft-Karp phases until no augmenting path remains.
    fn augment(&mut self, g: &Graph) {
        let n = g.n_total();
        let left: Vec<Vertex> = g.alive_vertices().collect();
        let mut dist = vec![INF; n];
        let mut next = vec![0usize; n];
        let mut queue = Vec::with_capacity(left.len());
        loop {
            queue.clear();
            for &v in &left {
                if self.mate_left[v] == FREE {
                    dist[v] = 0;
                    queue.push(v);
                } else {
                    dist[v] = INF;
                }
            }
            let mut found = false;
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                for &u in g.raw_neighbors(v) {
                    if !g.is_alive(u) {
                        continue;
                    }
                    let w = self.mate_right[u];
                    if w == FREE {
                        found = true;
                    } else if dist[w] == INF {
                        dist[w] = dist[v] + 1;
                        queue.push(w);
                    }
                }
            }
            if !found {
                break;
            }
            for &v in &left {
                next[v] = 0;
            }
            for &v in &left {
                if self.mate_left[v] == FREE && self.dfs(g, v, &mut dist, &mut next) {
                    self.size += 1;
                }
            }
        }
    }

    fn dfs(&mut self, g: &Graph, v: Vertex, dist: &mut [usize], next: &mut [usize]) -> bool {
        let adj = g.raw_neighbors(v);
        while next[v] < adj.len() {
            let u = adj[next[v]];
            next[v] += 1;
            if !g.is_alive(u) {
                continue;
            }
            let w = self.mate_right[u];
            let ok = if w == FREE {
                true
            } else {
                dist[w] != INF && dist[w] == dist[v] + 1 && self.dfs(g, w, dist, next)
            };
            if ok {
                self.mate_left[v] = u;
                self.mate_right[u] = v;
                return true;
            }
        }
        dist[v] = INF;
        false
    }

    /// Checks that the pairs form a matching of the double graph of `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut count = 0;
        for v in g.alive_vertices() {
            if let Some(u) = self.mate_of(v) {
                if !g.has_edge(v, u) || self.mate_right.get(u) != Some(&v) {
                    return false;
                }
                count += 1;
            }
        }
        count == self.size
    }
}

/// LP value of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfValue {
    Zero,
    Half,
    One,
}

impl HalfValue {
    /// Value times two.
    pub fn twice(self) -> usize {
        match self {
            HalfValue::Zero => 0,
            HalfValue::Half => 1,
            HalfValue::One => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    /// Indexed by vertex slot; `None` for dead slots.
    pub values: Vec<Option<HalfValue>>,
    pub extreme: bool,
}

impl LpSolution {
    pub fn value(&self, v: Vertex) -> Option<HalfValue> {
        self.values.get(v).copied().flatten()
    }

    /// Twice the objective, so that it stays an integer.
    pub fn objective_twice(&self) -> usize {
        self.values.iter().flatten().map(|x| x.twice()).sum()
    }

    pub fn objective(&self) -> f64 {
        self.objective_twice() as f64 / 2.0
    }

    fn with(&self, value: HalfValue) -> Vec<Vertex> {
        (0..self.values.len())
            .filter(|&v| self.values[v] == Some(value))
            .collect()
    }

    pub fn zeros(&self) -> Vec<Vertex> {
        self.with(HalfValue::Zero)
    }

    pub fn ones(&self) -> Vec<Vertex> {
        self.with(HalfValue::One)
    }

    pub fn halves(&self) -> Vec<Vertex> {
        self.with(HalfValue::Half)
    }

    /// Every edge has value sum at least one.
    pub fn is_feasible(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| {
            let a = self.value(u).map_or(0, HalfValue::twice);
            let b = self.value(v).map_or(0, HalfValue::twice);
            a + b >= 2
        })
    }
}

/// Residual digraph of the double graph. Node ids: `l_v = v`, `r_v = n + v`,
/// source `2n`, sink `2n + 1`.
struct Residual {
    n: usize,
    out: Vec<Vec<usize>>,
}

impl Residual {
    fn build(g: &Graph, m: &Matching) -> Self {
        let n = g.n_total();
        let (s, t) = (2 * n, 2 * n + 1);
        let mut out = vec![Vec::new(); 2 * n + 2];
        for v in g.alive_vertices() {
            match m.mate_of(v) {
                None => out[s].push(v),
                Some(_) => out[v].push(s),
            }
            for u in g.neighbors(v) {
                out[v].push(n + u);
            }
            match m.mate_right.get(v).copied().filter(|&w| w != FREE) {
                Some(w) => {
                    out[n + v].push(w);
                    out[t].push(n + v);
                }
                None => out[n + v].push(t),
            }
        }
        Residual { n, out }
    }

    fn source(&self) -> usize {
        2 * self.n
    }

    fn sink(&self) -> usize {
        2 * self.n + 1
    }

    fn mirror(&self, x: usize) -> Option<usize> {
        if x < self.n {
            Some(x + self.n)
        } else if x < 2 * self.n {
            Some(x - self.n)
        } else {
            None
        }
    }

    fn reach(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Strongly connected components in reverse topological order
    /// (every arc leaving a component points to an earlier one).
    fn sccs(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let size = self.out.len();
        let mut index = vec![usize::MAX; size];
        let mut low = vec![0; size];
        let mut on_stack = vec![false; size];
        let mut comp_of = vec![usize::MAX; size];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        let mut counter = 0;
        let mut call: Vec<(usize, usize)> = Vec::new();
        for root in 0..size {
            if index[root] != usize::MAX {
                continue;
            }
            call.push((root, 0));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (x, ref mut i)) = call.last_mut() {
                if *i < self.out[x].len() {
                    let y = self.out[x][*i];
                    *i += 1;
                    if index[y] == usize::MAX {
                        index[y] = counter;
                        low[y] = counter;
                        counter += 1;
                        stack.push(y);
                        on_stack[y] = true;
                        call.push((y, 0));
                    } else if on_stack[y] {
                        low[x] = low[x].min(index[y]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[x]);
                    }
                    if low[x] == index[x] {
                        let id = comps.len();
                        let mut comp = Vec::new();
                        loop {
                            let y = stack.pop().expect("tarjan stack");
                            on_stack[y] = false;
                            comp_of[y] = id;
                            comp.push(y);
                            if y == x {
                                break;
                            }
                        }
                        comps.push(comp);
                    }
                }
            }
        }
        (comp_of, comps)
    }
}

/// Labels from a closed node set `s_side` containing the source and not the sink.
fn labels_from(g: &Graph, n: usize, s_side: &[bool], extreme: bool) -> LpSolution {
    let mut values = vec![None; g.n_total()];
    for v in g.alive_vertices() {
        values[v] = Some(match (s_side[v], s_side[n + v]) {
            (true, false) => HalfValue::Zero,
            (false, true) => HalfValue::One,
            _ => HalfValue::Half,
        });
    }
    LpSolution { values, extreme }
}

/// Half-integral optimum from the alternating-reachability cut of a maximum matching.
pub fn half_integral_solution(g: &Graph, m: &Matching) -> LpSolution {
    let res = Residual::build(g, m);
    let s_side = res.reach(res.source());
    assert!(!s_side[res.sink()], "matching is not maximum");
    let sol = labels_from(g, res.n, &s_side, false);
    debug_assert_eq!(sol.objective_twice(), m.size());
    sol
}

/// Half-integral optimum whose Half-set is minimal.
///
/// Starting from the source side of the residual cut, whole strongly connected
/// components are added in reverse topological order whenever the enlarged
/// set stays closed, avoids the sink, and contains no vertex with both copies.
pub fn extreme_solution(g: &Graph, m: &Matching) -> LpSolution {
    let res = Residual::build(g, m);
    let mut s_side = res.reach(res.source());
    assert!(!s_side[res.sink()], "matching is not maximum");
    let (comp_of, comps) = res.sccs();
    for comp in &comps {
        if s_side[comp[0]] {
            continue;
        }
        let id = comp_of[comp[0]];
        let closed = comp
            .iter()
            .all(|&x| x != res.sink() && res.out[x].iter().all(|&y| comp_of[y] == id || s_side[y]));
        if !closed {
            continue;
        }
        let consistent = comp.iter().all(|&x| match res.mirror(x) {
            Some(y) => !s_side[y] && comp_of[y] != id,
            None => true,
        });
        if consistent {
            for &x in comp {
                s_side[x] = true;
            }
        }
    }
    let sol = labels_from(g, res.n, &s_side, true);
    debug_assert_eq!(sol.objective_twice(), m.size());
    sol
}

/// `⌈LP optimum⌉` from a maximum matching of the double graph.
pub fn lp_bound(m: &Matching) -> usize {
    m.size().div_ceil(2)
}
