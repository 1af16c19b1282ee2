//! Branch-and-reduce driver.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{combined_bound, BoundLadder};
use crate::graph::{is_vertex_cover, Graph, Vertex};
use crate::packing::{create_branch_constraints, Origin, Side};
use crate::reductions::{run_reductions, Fires, Ladder, Rule, RuleSet};
use crate::state::SearchState;

/// Branching vertex selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branching {
    /// B0: uniform over alive vertices with the configured seed.
    Random,
    /// B1: minimum degree.
    MinDegree,
    /// B2: maximum degree, then fewest edges inside N(v).
    MaxDegree,
}

impl Branching {
    pub const ALL: [Branching; 3] = [
        Branching::Random,
        Branching::MinDegree,
        Branching::MaxDegree,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Branching::Random => "b0",
            Branching::MinDegree => "b1",
            Branching::MaxDegree => "b2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.label().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub branching: Branching,
    pub rules: RuleSet,
    pub bounds: BoundLadder,
    pub mirrors: bool,
    pub packing: bool,
    pub time_limit: Option<Duration>,
    pub seed: u64,
    /// Start from a greedy cover instead of all of V.
    pub warm_start: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            branching: Branching::MaxDegree,
            rules: Ladder::R4.rules(),
            bounds: BoundLadder::L4,
            mirrors: true,
            packing: true,
            time_limit: None,
            seed: 0,
            warm_start: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub branches: u64,
    pub fires: Fires,
    pub prunes_bound: u64,
    pub prunes_packing: u64,
    pub elapsed: Duration,
    pub completed: bool,
}

impl SolveStats {
    /// `key=value` lines. With `timing` off, `elapsed_s` is written as 0 so
    /// that repeated runs are byte-identical.
    pub fn to_kv(&self, size: usize, timing: bool) -> String {
        let elapsed = if timing {
            self.elapsed.as_secs_f64()
        } else {
            0.0
        };
        let mut out = format!(
            "size={size}\nbranches={}\nelapsed_s={elapsed:.6}\nprunes_bound={}\nprunes_packing={}\n",
            self.branches, self.prunes_bound, self.prunes_packing
        );
        for rule in Rule::ALL {
            out.push_str(&format!(
                "fires_{}={}\n",
                rule.name(),
                self.fires[rule.index()]
            ));
        }
        out.push_str(&format!("completed={}\n", self.completed));
        out
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub size: usize,
    /// Sorted input-vertex ids.
    pub cover: Vec<Vertex>,
    pub stats: SolveStats,
}

struct Search<'c> {
    cfg: &'c SolverConfig,
    stats: SolveStats,
    deadline: Option<Instant>,
    timed_out: bool,
    rng: ChaCha8Rng,
}

/// One (sub-)instance with its own incumbent.
struct Node {
    state: SearchState,
    best: usize,
    best_cover: Option<Vec<Vertex>>,
}

/// Solves minimum vertex cover on `g`, which must have every vertex alive.
pub fn solve(g: &Graph, cfg: &SolverConfig) -> SolveResult {
    assert_eq!(
        g.alive_count(),
        g.n_total(),
        "solve expects an unreduced graph"
    );
    let start = Instant::now();
    let mut search = Search {
        cfg,
        stats: SolveStats::default(),
        deadline: cfg.time_limit.map(|d| start + d),
        timed_out: false,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
    };
    let mut input = g.clone();
    let mut initial: Vec<Vertex> = (0..g.n_total()).collect();
    if cfg.warm_start {
        initial = greedy_cover(&mut input);
    }
    let budget = initial.len();
    let cover = search
        .solve_instance(SearchState::new(input), budget)
        .unwrap_or(initial);
    let mut stats = search.stats;
    stats.elapsed = start.elapsed();
    stats.completed = !search.timed_out;
    assert!(is_vertex_cover(g, &cover), "solver returned a non-cover");
    SolveResult {
        size: cover.len(),
        cover,
        stats,
    }
}

/// Repeatedly takes a maximum-degree vertex. Leaves `g` untouched on return.
pub fn greedy_cover(g: &mut Graph) -> Vec<Vertex> {
    let mark = g.checkpoint();
    let mut cover = Vec::new();
    while g.edge_count() > 0 {
        let v = g
            .alive_vertices()
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("edges imply vertices");
        g.include(v);
        cover.push(v);
    }
    g.rollback(mark);
    cover.sort_unstable();
    cover
}

impl Search<'_> {
    /// Finds a cover smaller than `budget`, if one exists.
    fn solve_instance(&mut self, state: SearchState, budget: usize) -> Option<Vec<Vertex>> {
        let mut node = Node {
            state,
            best: budget,
            best_cover: None,
        };
        self.rec(&mut node);
        node.best_cover
    }

    fn out_of_time(&mut self) -> bool {
        if !self.timed_out {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    fn rec(&mut self, node: &mut Node) {
        if self.out_of_time() {
            return;
        }
        let mark = node.state.checkpoint();
        self.visit(node);
        node.state.rollback(mark);
    }

    fn visit(&mut self, node: &mut Node) {
        if node.state.packing.is_unsatisfied() {
            self.stats.prunes_packing += 1;
            return;
        }
        let outcome = run_reductions(&mut node.state, &self.cfg.rules, &mut self.stats.fires);
        if outcome.pruned {
            self.stats.prunes_packing += 1;
            return;
        }
        self.drop_isolated(&mut node.state);
        let g = &node.state.graph;
        let c = g.cover_size();
        if c >= node.best {
            self.stats.prunes_bound += 1;
            return;
        }
        if g.is_empty() {
            node.best = c;
            node.best_cover = Some(g.reconstruct(&[]));
            return;
        }
        let lb = combined_bound(&node.state.graph, &mut node.state.matching, self.cfg.bounds);
        if c + lb >= node.best {
            self.stats.prunes_bound += 1;
            return;
        }
        let comps = node.state.graph.components();
        if comps.len() > 1 {
            self.solve_components(node, comps);
            return;
        }
        self.branch(node);
    }

    /// Isolated vertices never need to be covered.
    fn drop_isolated(&mut self, state: &mut SearchState) {
        let isolated: Vec<Vertex> = state
            .graph
            .alive_vertices()
            .filter(|&v| state.graph.degree(v) == 0)
            .collect();
        for v in isolated {
            state.exclude(v);
        }
    }

    fn solve_components(&mut self, node: &mut Node, mut comps: Vec<Vec<Vertex>>) {
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let mut total = node.state.graph.cover_size();
        let mut extra = Vec::new();
        let mut complete = true;
        for comp in &comps {
            let budget = node.best.saturating_sub(total);
            let sub = self.sub_instance(&node.state, comp);
            match self.solve_instance(sub, budget) {
                Some(cover) => {
                    total += cover.len();
                    extra.extend(cover.iter().map(|&i| comp[i]));
                }
                None => {
                    total += budget;
                    complete = false;
                }
            }
        }
        if complete && total < node.best {
            node.best = total;
            node.best_cover = Some(node.state.graph.reconstruct(&extra));
        }
    }

    /// Induced sub-instance on `comp`, carrying the constraints that live
    /// entirely inside it. Constraints spanning components are dropped.
    fn sub_instance(&self, state: &SearchState, comp: &[Vertex]) -> SearchState {
        let g = &state.graph;
        let mut sub = SearchState::new(g.induced(comp));
        if state.packing.is_idle() {
            return sub;
        }
        let mut index = vec![usize::MAX; g.n_total()];
        for (i, &v) in comp.iter().enumerate() {
            index[v] = i;
        }
        for (_, c) in state.packing.active() {
            let vars: Vec<Vertex> = c.vars.iter().copied().filter(|&v| g.is_alive(v)).collect();
            if vars.is_empty() || vars.iter().any(|&v| index[v] == usize::MAX) {
                continue;
            }
            let mapped = vars.iter().map(|&v| index[v]).collect();
            sub.packing.add(mapped, c.rhs, Origin::Inherited);
        }
        sub
    }

    fn branch(&mut self, node: &mut Node) {
        let g = &node.state.graph;
        let v = select_branch_vertex(g, self.cfg.branching, &mut self.rng);
        let mirror_set = if self.cfg.mirrors {
            mirrors(g, v)
        } else {
            Vec::new()
        };
        self.stats.branches += 1;

        let mark = node.state.checkpoint();
        if self.cfg.packing {
            create_branch_constraints(&mut node.state, v, Side::Include);
        }
        node.state.include(v);
        for &u in &mirror_set {
            node.state.include(u);
        }
        self.rec(node);
        node.state.rollback(mark);

        // The exclude-side argument swaps v into the cover, which the include
        // side only searches together with its mirrors, so it needs M(v) = ∅.
        let mark = node.state.checkpoint();
        if self.cfg.packing && mirror_set.is_empty() {
            create_branch_constraints(&mut node.state, v, Side::Exclude);
        }
        node.state.exclude(v);
        self.rec(node);
        node.state.rollback(mark);
    }
}

/// Picks the vertex to branch on. Panics on an empty graph.
pub fn select_branch_vertex(g: &Graph, how: Branching, rng: &mut ChaCha8Rng) -> Vertex {
    assert!(!g.is_empty(), "branching on an empty graph");
    match how {
        Branching::Random => {
            let alive: Vec<Vertex> = g.alive_vertices().collect();
            alive[rng.gen_range(0..alive.len())]
        }
        Branching::MinDegree => g
            .alive_vertices()
            .min_by_key(|&v| (g.degree(v), v))
            .expect("nonempty"),
        Branching::MaxDegree => {
            let top = g
                .alive_vertices()
                .map(|v| g.degree(v))
                .max()
                .expect("nonempty");
            g.alive_vertices()
                .filter(|&v| g.degree(v) == top)
                .min_by_key(|&v| (g.edges_within(&g.neighbor_vec(v)), v))
                .expect("nonempty")
        }
    }
}

/// Mirrors of `v`: vertices `u ∈ N²(v)` with `N(v) \ N(u)` a clique (or empty).
pub fn mirrors(g: &Graph, v: Vertex) -> Vec<Vertex> {
    let nv = g.neighbor_vec(v);
    g.n2(v)
        .into_iter()
        .filter(|&u| {
            let rest: Vec<Vertex> = nv.iter().copied().filter(|&x| !g.has_edge(u, x)).collect();
            g.is_clique(&rest)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges)
    }

    #[test]
    fn empty_graph() {
        let r = solve(&Graph::new(3), &SolverConfig::default());
        assert_eq!(r.size, 0);
        assert!(r.stats.completed);
    }

    #[test]
    fn petersen_needs_six() {
        let g = petersen();
        for packing in [false, true] {
            let cfg = SolverConfig {
                packing,
                ..Default::default()
            };
            let r = solve(&g, &cfg);
            assert_eq!(r.size, 6);
            assert!(is_vertex_cover(&g, &r.cover));
        }
    }

    #[test]
    fn disjoint_triangles() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let cfg = SolverConfig {
            rules: RuleSet::none(),
            bounds: BoundLadder::L0,
            ..Default::default()
        };
        assert_eq!(solve(&g, &cfg).size, 4);
    }

    #[test]
    fn star_b2_picks_center() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(select_branch_vertex(&g, Branching::MaxDegree, &mut rng), 0);
    }

    #[test]
    fn b2_tiebreak_prefers_sparse_neighbourhood() {
        // 0: neighbours 2,3,4 with edges 2-3, 3-4; 1: neighbours 5,6,7 with edge 5-6
        let g = Graph::from_edges(
            8,
            &[
                (0, 2),
                (0, 3),
                (0, 4),
                (2, 3),
                (3, 4),
                (1, 5),
                (1, 6),
                (1, 7),
                (5, 6),
            ],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(g.degree(3), 3);
        let v = select_branch_vertex(&g, Branching::MaxDegree, &mut rng);
        assert_eq!(v, 1);
    }

    #[test]
    fn b0_is_reproducible() {
        let g = cycle(9);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..10)
                .map(|_| select_branch_vertex(&g, Branching::Random, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirrors(&cycle(4), 0), vec![2]);
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(mirrors(&p4, 0), vec![2]);
        // N(0) \ N(2) = {4}, a single vertex
        assert_eq!(mirrors(&cycle(5), 0), vec![2, 3]);
        assert_eq!(mirrors(&cycle(6), 0), vec![2, 4]);
    }

    #[test]
    fn c4_mirror_branch() {
        let cfg = SolverConfig {
            rules: RuleSet::none(),
            bounds: BoundLadder::L0,
            packing: false,
            ..Default::default()
        };
        let r = solve(&cycle(4), &cfg);
        assert_eq!(r.size, 2);
        assert_eq!(r.cover, vec![0, 2]);
    }

    #[test]
    fn stats_document_keys() {
        let r = solve(&cycle(5), &SolverConfig::default());
        let kv = r.stats.to_kv(r.size, false);
        assert!(kv.starts_with("size=3\nbranches="));
        assert!(kv.contains("elapsed_s=0.000000\n"));
        assert!(kv.contains("fires_deg1="));
        assert!(kv.ends_with("completed=true\n"));
    }

    #[test]
    fn warm_start_keeps_answer() {
        let cfg = SolverConfig {
            warm_start: true,
            ..Default::default()
        };
        assert_eq!(solve(&petersen(), &cfg).size, 6);
    }
}
