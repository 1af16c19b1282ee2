//! Reduction rules and the fixpoint engine.
//!
//! Every rule works through [`SearchState`], so its effect is journaled and
//! the packing store sees every decision.

use crate::graph::{FoldRecord, Vertex};
use crate::lp::{extreme_solution, HalfValue};
use crate::packing::{self, PackingOutcome};
use crate::state::SearchState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Degree1,
    Dominance,
    Unconfined,
    Lp,
    Fold2,
    Twin,
    Funnel,
    Desk,
    Packing,
}

impl Rule {
    /// Engine order: cheap rules first.
    pub const ALL: [Rule; 9] = [
        Rule::Degree1,
        Rule::Dominance,
        Rule::Unconfined,
        Rule::Lp,
        Rule::Fold2,
        Rule::Twin,
        Rule::Funnel,
        Rule::Desk,
        Rule::Packing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Degree1 => "deg1",
            Rule::Dominance => "dominance",
            Rule::Unconfined => "unconfined",
            Rule::Lp => "lp",
            Rule::Fold2 => "fold2",
            Rule::Twin => "twin",
            Rule::Funnel => "funnel",
            Rule::Desk => "desk",
            Rule::Packing => "packing",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Enabled rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct RuleSet {
    enabled: [bool; 9],
}

impl RuleSet {
    pub fn none() -> Self {
        RuleSet::default()
    }

    pub fn all() -> Self {
        RuleSet { enabled: [true; 9] }
    }

    pub fn from_rules(rules: &[Rule]) -> Self {
        let mut set = RuleSet::none();
        for &r in rules {
            set.enabled[r.index()] = true;
        }
        set
    }

    pub fn with(mut self, rule: Rule, on: bool) -> Self {
        self.enabled[rule.index()] = on;
        self
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.enabled[rule.index()]
    }

    pub fn rules(&self) -> Vec<Rule> {
        Rule::ALL.into_iter().filter(|r| self.has(*r)).collect()
    }

    /// Parses `r0`..`r4` or a comma list of rule names.
    pub fn parse(s: &str) -> Option<RuleSet> {
        if let Some(l) = Ladder::parse(s) {
            return Some(l.rules());
        }
        let mut set = RuleSet::none();
        for name in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            set.enabled[Rule::from_name(name)?.index()] = true;
        }
        Some(set)
    }
}

/// Cumulative reduction ladder R0 ⊂ R1 ⊂ ... ⊂ R4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ladder {
    R0,
    R1,
    R2,
    R3,
    R4,
}

impl Ladder {
    pub const ALL: [Ladder; 5] = [Ladder::R0, Ladder::R1, Ladder::R2, Ladder::R3, Ladder::R4];

    pub fn rules(self) -> RuleSet {
        use Rule::*;
        let list: &[Rule] = match self {
            Ladder::R0 => &[],
            Ladder::R1 => &[Degree1, Dominance, Fold2],
            Ladder::R2 => &[Degree1, Dominance, Fold2, Lp],
            Ladder::R3 => &[
                Degree1, Dominance, Fold2, Lp, Unconfined, Twin, Funnel, Desk,
            ],
            Ladder::R4 => &Rule::ALL,
        };
        RuleSet::from_rules(list)
    }

    pub fn label(self) -> &'static str {
        match self {
            Ladder::R0 => "r0",
            Ladder::R1 => "r1",
            Ladder::R2 => "r2",
            Ladder::R3 => "r3",
            Ladder::R4 => "r4",
        }
    }

    pub fn parse(s: &str) -> Option<Ladder> {
        Ladder::ALL
            .into_iter()
            .find(|l| l.label().eq_ignore_ascii_case(s))
    }
}

/// Per-rule application counters.
pub type Fires = [u64; 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionOutcome {
    /// Cover size committed by this run.
    pub delta_cover: usize,
    pub pruned: bool,
}

/// Result of one exhaustive pass of a single rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pass {
    Fired(u64),
    Pruned,
}

impl Pass {
    fn idle(&self) -> bool {
        *self == Pass::Fired(0)
    }
}

/// Applies the enabled rules until none fires or the packing store is violated.
pub fn run_reductions(
    state: &mut SearchState,
    rules: &RuleSet,
    fires: &mut Fires,
) -> ReductionOutcome {
    let start = state.graph.cover_size();
    'outer: loop {
        if state.packing.is_unsatisfied() {
            return ReductionOutcome {
                delta_cover: state.graph.cover_size() - start,
                pruned: true,
            };
        }
        for rule in Rule::ALL {
            if !rules.has(rule) {
                continue;
            }
            match apply(state, rule) {
                Pass::Pruned => {
                    fires[rule.index()] += 1;
                    return ReductionOutcome {
                        delta_cover: state.graph.cover_size() - start,
                        pruned: true,
                    };
                }
                Pass::Fired(0) => {}
                Pass::Fired(k) => {
                    fires[rule.index()] += k;
                    continue 'outer;
                }
            }
        }
        break;
    }
    ReductionOutcome {
        delta_cover: state.graph.cover_size() - start,
        pruned: state.packing.is_unsatisfied(),
    }
}

/// One exhaustive pass of `rule`.
pub fn apply(state: &mut SearchState, rule: Rule) -> Pass {
    let pass = match rule {
        Rule::Degree1 => Pass::Fired(reduce_degree1(state)),
        Rule::Dominance => Pass::Fired(reduce_dominance(state)),
        Rule::Unconfined => Pass::Fired(reduce_unconfined(state)),
        Rule::Lp => Pass::Fired(reduce_lp(state)),
        Rule::Fold2 => Pass::Fired(reduce_fold2(state)),
        Rule::Twin => Pass::Fired(reduce_twin(state)),
        Rule::Funnel => Pass::Fired(reduce_funnel(state)),
        Rule::Desk => Pass::Fired(reduce_desk(state)),
        Rule::Packing => reduce_packing(state),
    };
    if !pass.idle() && state.packing.is_unsatisfied() {
        return Pass::Pruned;
    }
    pass
}

/// Degree ≤ 1: exclude the vertex, include its neighbour. Worklist driven.
pub fn reduce_degree1(state: &mut SearchState) -> u64 {
    let g = &state.graph;
    let mut work: Vec<Vertex> = g.alive_vertices().filter(|&v| g.degree(v) <= 1).collect();
    work.reverse();
    let mut count = 0;
    while let Some(v) = work.pop() {
        if !state.graph.is_alive(v) || state.graph.degree(v) > 1 {
            continue;
        }
        let nbrs = state.exclude(v);
        count += 1;
        let g = &state.graph;
        for u in nbrs {
            for &x in g.raw_neighbors(u) {
                if g.is_alive(x) && g.degree(x) <= 1 {
                    work.push(x);
                }
            }
        }
    }
    count
}

/// Include `v` when some neighbour `u` has `N[u] ⊆ N[v]`.
pub fn reduce_dominance(state: &mut SearchState) -> u64 {
    let n = state.graph.n_total();
    let mut mark = vec![false; n];
    let mut count = 0;
    for v in 0..n {
        let g = &state.graph;
        if !g.is_alive(v) || g.degree(v) == 0 {
            continue;
        }
        let closed = g.closed(v);
        for &x in &closed {
            mark[x] = true;
        }
        let dv = g.degree(v);
        let dominates = g
            .neighbors(v)
            .any(|u| g.degree(u) <= dv && g.neighbors(u).all(|x| mark[x]));
        for &x in &closed {
            mark[x] = false;
        }
        if dominates {
            state.include(v);
            count += 1;
        }
    }
    count
}

/// Whether `v` is unconfined: grows `S ∋ v` while some `u ∈ N(S)` with
/// `|N(u) ∩ S| = 1` has exactly one neighbour outside `N[S]`.
pub fn is_unconfined(state: &SearchState, v: Vertex) -> bool {
    let g = &state.graph;
    let n = g.n_total();
    let mut in_s = vec![false; n];
    let mut in_ns = vec![false; n];
    let mut boundary: Vec<Vertex> = Vec::new();
    in_s[v] = true;
    in_ns[v] = true;
    for u in g.neighbors(v) {
        in_ns[u] = true;
        boundary.push(u);
    }
    loop {
        let mut best: Option<(usize, Vertex)> = None;
        for &u in &boundary {
            if in_s[u] {
                continue;
            }
            if g.neighbors(u).filter(|&x| in_s[x]).count() != 1 {
                continue;
            }
            let mut outside = 0;
            let mut witness = usize::MAX;
            for x in g.neighbors(u) {
                if !in_ns[x] {
                    outside += 1;
                    witness = x;
                }
            }
            if best.is_none_or(|(o, _)| outside < o) {
                best = Some((outside, witness));
            }
            if outside == 0 {
                break;
            }
        }
        match best {
            Some((0, _)) => return true,
            Some((1, w)) => {
                in_s[w] = true;
                in_ns[w] = true;
                for x in g.neighbors(w) {
                    if !in_ns[x] {
                        in_ns[x] = true;
                        boundary.push(x);
                    }
                }
            }
            _ => return false,
        }
    }
}

pub fn reduce_unconfined(state: &mut SearchState) -> u64 {
    let mut count = 0;
    for v in 0..state.graph.n_total() {
        if state.graph.is_alive(v) && state.graph.degree(v) > 0 && is_unconfined(state, v) {
            state.include(v);
            count += 1;
        }
    }
    count
}

/// Fixes the integral part of an extreme LP optimum. Counts one application.
pub fn reduce_lp(state: &mut SearchState) -> u64 {
    if state.graph.edge_count() == 0 {
        return 0;
    }
    state.matching.repair(&state.graph);
    let sol = extreme_solution(&state.graph, &state.matching);
    let ones = sol.ones();
    let zeros = sol.zeros();
    if ones.is_empty() && zeros.is_empty() {
        return 0;
    }
    for &v in &ones {
        state.include(v);
    }
    for &v in &zeros {
        assert_eq!(
            state.graph.degree(v),
            0,
            "LP zero vertex {v} has a neighbour not fixed to one"
        );
        state.exclude(v);
    }
    1
}

/// Replaces the vertices `removed` by a fresh vertex adjacent to `attach`.
fn merge(state: &mut SearchState, removed: &[Vertex], attach: &[Vertex]) -> Vertex {
    for &x in removed {
        state.remove_folded(x);
    }
    let w = state.add_vertex();
    for &x in attach {
        state.graph.add_edge(w, x);
    }
    w
}

/// Degree-2 vertex with nonadjacent neighbours `a`, `b`: fold N[v] into one vertex.
pub fn fold_degree2(state: &mut SearchState, v: Vertex) {
    let nv = state.graph.neighbor_vec(v);
    let [a, b] = [nv[0], nv[1]];
    let attach = state.graph.n2(v);
    let w = merge(state, &[v, a, b], &attach);
    state.graph.push_fold(FoldRecord::Degree2 {
        center: v,
        ends: [a, b],
        merged: w,
    });
}

pub fn reduce_fold2(state: &mut SearchState) -> u64 {
    let mut count = 0;
    let mut v = 0;
    while v < state.graph.n_total() {
        let g = &state.graph;
        if g.is_alive(v) && g.degree(v) == 2 {
            let nv = g.neighbor_vec(v);
            if !g.has_edge(nv[0], nv[1]) {
                fold_degree2(state, v);
                count += 1;
            }
        }
        v += 1;
    }
    count
}

/// Two degree-3 vertices with the same neighbourhood.
pub fn find_twin(state: &SearchState, u: Vertex) -> Option<Vertex> {
    let g = &state.graph;
    if !g.is_alive(u) || g.degree(u) != 3 {
        return None;
    }
    let nu = g.neighbor_vec(u);
    g.neighbors(nu[0])
        .find(|&v| v != u && g.degree(v) == 3 && g.neighbors(v).eq(nu.iter().copied()))
}

pub fn reduce_twin(state: &mut SearchState) -> u64 {
    let mut count = 0;
    let mut u = 0;
    while u < state.graph.n_total() {
        if let Some(v) = find_twin(state, u) {
            let nu = state.graph.neighbor_vec(u);
            if state.graph.edges_within(&nu) > 0 {
                for &x in &nu {
                    state.include(x);
                }
                state.exclude(u);
                state.exclude(v);
            } else {
                let mut attach = state.graph.n_of_set(&nu);
                attach.retain(|&x| x != u && x != v);
                let w = merge(state, &[u, v, nu[0], nu[1], nu[2]], &attach);
                state.graph.push_fold(FoldRecord::Twin {
                    twins: [u, v],
                    shared: [nu[0], nu[1], nu[2]],
                    merged: w,
                });
            }
            count += 1;
        }
        u += 1;
    }
    count
}

/// Rewrites alternative sets `a`, `b`: includes N(A) ∩ N(B), removes A ∪ B and
/// joins N(A)\N[B] completely to N(B)\N[A].
pub fn apply_alternative(state: &mut SearchState, a: &[Vertex], b: &[Vertex]) {
    let g = &state.graph;
    let na = g.n_of_set(a);
    let nb = g.n_of_set(b);
    let common: Vec<Vertex> = na
        .iter()
        .copied()
        .filter(|x| nb.binary_search(x).is_ok())
        .collect();
    let a_side: Vec<Vertex> = na
        .iter()
        .copied()
        .filter(|x| nb.binary_search(x).is_err() && !b.contains(x))
        .collect();
    let b_side: Vec<Vertex> = nb
        .iter()
        .copied()
        .filter(|x| na.binary_search(x).is_err() && !a.contains(x))
        .collect();
    for &x in &common {
        state.include(x);
    }
    for &x in a.iter().chain(b) {
        state.remove_folded(x);
    }
    for &x in &a_side {
        for &y in &b_side {
            state.graph.add_edge(x, y);
        }
    }
    state.graph.push_fold(FoldRecord::Alternative {
        a: a.to_vec(),
        b: b.to_vec(),
        a_side,
        b_side,
    });
}

/// Funnel partner of `v`: a neighbour `u` with N(v)\{u} a clique.
pub fn funnel_partner(state: &SearchState, v: Vertex) -> Option<Vertex> {
    let g = &state.graph;
    if !g.is_alive(v) || g.degree(v) == 0 {
        return None;
    }
    let nv = g.neighbor_vec(v);
    let without = |u: Vertex| -> Vec<Vertex> { nv.iter().copied().filter(|&x| x != u).collect() };
    for (i, &x) in nv.iter().enumerate() {
        for &y in &nv[i + 1..] {
            if !g.has_edge(x, y) {
                return [x, y].into_iter().find(|&u| g.is_clique(&without(u)));
            }
        }
    }
    Some(nv[0])
}

pub fn reduce_funnel(state: &mut SearchState) -> u64 {
    let mut count = 0;
    for v in 0..state.graph.n_total() {
        if let Some(u) = funnel_partner(state, v) {
            apply_alternative(state, &[u], &[v]);
            count += 1;
        }
    }
    count
}

/// A chordless 4-cycle `a1 b1 a2 b2` with degrees 3 or 4, N(A) ∩ N(B) = ∅
/// and at most two outside neighbours on each side.
pub fn find_desk(state: &SearchState, a1: Vertex) -> Option<([Vertex; 2], [Vertex; 2])> {
    let g = &state.graph;
    let small = |x: Vertex| (3..=4).contains(&g.degree(x));
    if !g.is_alive(a1) || !small(a1) {
        return None;
    }
    let na1 = g.neighbor_vec(a1);
    for (i, &b1) in na1.iter().enumerate() {
        if !small(b1) {
            continue;
        }
        for &b2 in &na1[i + 1..] {
            if !small(b2) || g.has_edge(b1, b2) {
                continue;
            }
            for a2 in g.neighbors(b1) {
                if a2 == a1 || !small(a2) || g.has_edge(a1, a2) || !g.has_edge(a2, b2) {
                    continue;
                }
                let a = [a1, a2];
                let b = [b1, b2];
                let na = g.n_of_set(&a);
                let nb = g.n_of_set(&b);
                if na.iter().any(|x| nb.binary_search(x).is_ok()) {
                    continue;
                }
                let outside_a = na.iter().filter(|x| !b.contains(x)).count();
                let outside_b = nb.iter().filter(|x| !a.contains(x)).count();
                if outside_a <= 2 && outside_b <= 2 {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

pub fn reduce_desk(state: &mut SearchState) -> u64 {
    let mut count = 0;
    for v in 0..state.graph.n_total() {
        if let Some((a, b)) = find_desk(state, v) {
            apply_alternative(state, &a, &b);
            count += 1;
        }
    }
    count
}

/// Both packing rules over every active constraint.
pub fn reduce_packing(state: &mut SearchState) -> Pass {
    let mut count = 0;
    let total = state.packing.len();
    for cid in 0..total {
        if !state.packing.get(cid).is_active() {
            continue;
        }
        let outcome = if state.packing.get(cid).rhs == 0 {
            packing::reduce_rhs_zero(state, cid)
        } else {
            packing::reduce_rhs_pos(state, cid)
        };
        match outcome {
            PackingOutcome::NoChange => {}
            PackingOutcome::Changed => count += 1,
            PackingOutcome::Pruned => return Pass::Pruned,
        }
    }
    Pass::Fired(count)
}

/// LP labels of the current graph, for callers that want to inspect them.
pub fn lp_labels(state: &mut SearchState) -> Vec<Option<HalfValue>> {
    state.matching.repair(&state.graph);
    extreme_solution(&state.graph, &state.matching).values
}
