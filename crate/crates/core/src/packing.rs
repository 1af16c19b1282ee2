//! Packing constraints `Σ_{v∈S} x_v ≤ k`.
//!
//! A constraint records that any cover violating it is dominated by a cover
//! reachable in a sibling branch, so it is only ever used to prune and to
//! trigger reductions. The store is journaled like the graph; variables are
//! removed as vertices get decided and restored exactly on rollback.

use crate::graph::{Graph, Vertex};
use crate::state::SearchState;

pub type ConstraintId = usize;

/// Which part of the search created a constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    IncludeBranch,
    ExcludeBranch,
    ZeroRhs,
    PositiveRhs,
    /// Copied into a component sub-instance.
    Inherited,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingConstraint {
    pub vars: Vec<Vertex>,
    pub rhs: i64,
    pub origin: Origin,
    active: bool,
}

impl PackingConstraint {
    pub fn is_active(&self) -> bool {
        self.active
    }

    pub fn is_violated(&self) -> bool {
        self.active && self.rhs < 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Edit {
    Created,
    VarRemoved {
        cid: ConstraintId,
        pos: usize,
        var: Vertex,
        included: bool,
    },
    Retired(ConstraintId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StoreMark {
    depth: usize,
    position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoreSnapshot {
    constraints: Vec<PackingConstraint>,
    by_var: Vec<Vec<ConstraintId>>,
    violated: usize,
    slots: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ConstraintStore {
    constraints: Vec<PackingConstraint>,
    by_var: Vec<Vec<ConstraintId>>,
    journal: Vec<Edit>,
    checkpoints: Vec<usize>,
    violated: usize,
    slots: usize,
}

impl ConstraintStore {
    pub fn new(n: usize) -> Self {
        ConstraintStore {
            by_var: vec![Vec::new(); n],
            ..Default::default()
        }
    }

    /// Resizes the variable index to `n` slots. Only valid for slots that
    /// appear in no constraint, which is always true for fold vertices.
    pub(crate) fn resize_vars(&mut self, n: usize) {
        debug_assert!(self.by_var[n.min(self.by_var.len())..]
            .iter()
            .all(Vec::is_empty));
        self.by_var.resize(n, Vec::new());
    }

    /// Adds `Σ vars ≤ rhs`. A constraint with no variables and `rhs ≥ 0` is
    /// trivially satisfied and not stored. Returns the id if stored.
    pub fn add(&mut self, vars: Vec<Vertex>, rhs: i64, origin: Origin) -> Option<ConstraintId> {
        if vars.is_empty() && rhs >= 0 {
            return None;
        }
        let cid = self.constraints.len();
        for &v in &vars {
            self.by_var[v].push(cid);
        }
        if rhs < 0 {
            self.violated += 1;
        }
        self.slots += vars.len();
        self.constraints.push(PackingConstraint {
            vars,
            rhs,
            origin,
            active: true,
        });
        self.journal.push(Edit::Created);
        Some(cid)
    }

    /// `v` joined the cover: drop it everywhere and decrement each rhs.
    pub fn on_include(&mut self, v: Vertex) {
        self.on_decide(v, true);
    }

    /// `v` left the graph uncovered: drop it everywhere, rhs unchanged.
    pub fn on_exclude(&mut self, v: Vertex) {
        self.on_decide(v, false);
    }

    pub fn on_decide(&mut self, v: Vertex, included: bool) {
        if v >= self.by_var.len() {
            return;
        }
        for i in 0..self.by_var[v].len() {
            let cid = self.by_var[v][i];
            let c = &mut self.constraints[cid];
            if !c.active {
                continue;
            }
            let Some(pos) = c.vars.iter().position(|&x| x == v) else {
                continue;
            };
            c.vars.swap_remove(pos);
            if included {
                c.rhs -= 1;
                if c.rhs == -1 {
                    self.violated += 1;
                }
            }
            self.journal.push(Edit::VarRemoved {
                cid,
                pos,
                var: v,
                included,
            });
            if c.vars.is_empty() && c.rhs >= 0 {
                c.active = false;
                self.journal.push(Edit::Retired(cid));
            }
        }
    }

    /// True if some active constraint has a negative right-hand side.
    pub fn is_unsatisfied(&self) -> bool {
        self.violated > 0
    }

    /// No constraint was ever created on the current path.
    pub fn is_idle(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn get(&self, cid: ConstraintId) -> &PackingConstraint {
        &self.constraints[cid]
    }

    /// Number of constraint slots, active or not.
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn active(&self) -> impl Iterator<Item = (ConstraintId, &PackingConstraint)> + '_ {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.active)
    }

    /// Ids of the constraints that mention `v`.
    pub fn containing(&self, v: Vertex) -> &[ConstraintId] {
        self.by_var.get(v).map_or(&[], Vec::as_slice)
    }

    /// Variable slots at creation time summed over all stored constraints.
    pub fn total_slots(&self) -> usize {
        self.slots
    }

    pub fn checkpoint(&mut self) -> StoreMark {
        self.checkpoints.push(self.journal.len());
        StoreMark {
            depth: self.checkpoints.len() - 1,
            position: self.journal.len(),
        }
    }

    pub fn rollback(&mut self, mark: StoreMark) {
        assert!(
            self.checkpoints.get(mark.depth) == Some(&mark.position),
            "stale checkpoint"
        );
        self.checkpoints.truncate(mark.depth);
        while self.journal.len() > mark.position {
            match self.journal.pop().expect("journal underflow") {
                Edit::Created => {
                    let c = self.constraints.pop().expect("constraint underflow");
                    for &v in &c.vars {
                        let popped = self.by_var[v].pop();
                        debug_assert_eq!(popped, Some(self.constraints.len()));
                    }
                    if c.rhs < 0 {
                        self.violated -= 1;
                    }
                    self.slots -= c.vars.len();
                }
                Edit::VarRemoved {
                    cid,
                    pos,
                    var,
                    included,
                } => {
                    let c = &mut self.constraints[cid];
                    c.vars.push(var);
                    let last = c.vars.len() - 1;
                    c.vars.swap(pos, last);
                    if included {
                        if c.rhs == -1 {
                            self.violated -= 1;
                        }
                        c.rhs += 1;
                    }
                }
                Edit::Retired(cid) => self.constraints[cid].active = true,
            }
        }
    }

    pub fn snapshot(&self) -> StoreSnapshot {
        StoreSnapshot {
            constraints: self.constraints.clone(),
            by_var: self.by_var.clone(),
            violated: self.violated,
            slots: self.slots,
        }
    }

    /// Checks that `by_var` inverts membership and the violation counter.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (cid, c) in self.constraints.iter().enumerate() {
            for &v in &c.vars {
                if !self.by_var[v].contains(&cid) {
                    return Err(format!("constraint {cid} holds {v} but index misses it"));
                }
            }
            if !c.active && (c.rhs < 0 || !c.vars.is_empty()) {
                return Err(format!(
                    "constraint {cid} retired while not trivially satisfied"
                ));
            }
        }
        let violated = self.constraints.iter().filter(|c| c.is_violated()).count();
        if violated != self.violated {
            return Err("violation counter mismatch".into());
        }
        Ok(())
    }
}

/// Side of a two-way branch on a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Include,
    Exclude,
}

/// Adds `vars ≤ rhs` unless a fold-introduced vertex would appear in it.
/// Returns whether it was added (or was trivially satisfied).
fn add_over_originals(
    state: &mut SearchState,
    vars: Vec<Vertex>,
    rhs: i64,
    origin: Origin,
) -> bool {
    let n0 = state.graph.n_original();
    if vars.iter().any(|&v| v >= n0) {
        return false;
    }
    state.packing.add(vars, rhs, origin);
    true
}

/// `N⁺(w) = N(w) \ N[v]`.
fn n_plus(g: &Graph, w: Vertex, v: Vertex) -> Vec<Vertex> {
    g.neighbors(w)
        .filter(|&u| u != v && !g.has_edge(u, v))
        .collect()
}

/// Branch-side constraints for branch vertex `v`; call before `v` is decided.
///
/// Include side: `Σ_{N(v)} x ≤ |N(v)| − 1`. Exclude side: for each `w ∈ N(v)`,
/// `Σ_{N⁺(w)} x ≤ |N⁺(w)| − 1`; an empty `N⁺(w)` yields an unsatisfied store.
pub fn create_branch_constraints(state: &mut SearchState, v: Vertex, side: Side) {
    let nv = state.graph.neighbor_vec(v);
    match side {
        Side::Include => {
            let rhs = nv.len() as i64 - 1;
            add_over_originals(state, nv, rhs, Origin::IncludeBranch);
        }
        Side::Exclude => {
            for w in nv {
                let plus = n_plus(&state.graph, w, v);
                let rhs = plus.len() as i64 - 1;
                add_over_originals(state, plus, rhs, Origin::ExcludeBranch);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackingOutcome {
    NoChange,
    Changed,
    Pruned,
}

/// Alive variables of constraint `cid`, sorted.
fn alive_vars(state: &SearchState, cid: ConstraintId) -> Vec<Vertex> {
    let mut vars: Vec<Vertex> = state
        .packing
        .get(cid)
        .vars
        .iter()
        .copied()
        .filter(|&v| state.graph.is_alive(v))
        .collect();
    vars.sort_unstable();
    vars
}

/// Constraint with rhs 0: no variable may enter the cover.
pub fn reduce_rhs_zero(state: &mut SearchState, cid: ConstraintId) -> PackingOutcome {
    let c = state.packing.get(cid);
    if !c.is_active() || c.rhs != 0 {
        return PackingOutcome::NoChange;
    }
    let set = alive_vars(state, cid);
    if set.is_empty() {
        return PackingOutcome::NoChange;
    }
    let g = &state.graph;
    if g.edges_within(&set) > 0 {
        return PackingOutcome::Pruned;
    }
    let ns = g.n_of_set(&set);
    let mut closed = set.clone();
    closed.extend(&ns);
    closed.sort_unstable();
    let mut follow_ups = Vec::new();
    for &u in &ns {
        let touching = g
            .neighbors(u)
            .filter(|x| set.binary_search(x).is_ok())
            .count();
        if touching == 1 {
            let plus: Vec<Vertex> = g
                .neighbors(u)
                .filter(|x| closed.binary_search(x).is_err())
                .collect();
            follow_ups.push(plus);
        }
    }
    for &s in &set {
        if state.graph.is_alive(s) {
            state.exclude(s);
        }
    }
    for plus in follow_ups {
        let rhs = plus.len() as i64 - 1;
        add_over_originals(state, plus, rhs, Origin::ZeroRhs);
    }
    if state.packing.is_unsatisfied() {
        PackingOutcome::Pruned
    } else {
        PackingOutcome::Changed
    }
}

/// Constraint with rhs `k ≥ 1`: any outside vertex touching more than `k`
/// variables must be in the cover.
pub fn reduce_rhs_pos(state: &mut SearchState, cid: ConstraintId) -> PackingOutcome {
    let c = state.packing.get(cid);
    if !c.is_active() || c.rhs < 1 {
        return PackingOutcome::NoChange;
    }
    let k = c.rhs as usize;
    let set = alive_vars(state, cid);
    if set.len() <= k {
        return PackingOutcome::NoChange;
    }
    let g = &state.graph;
    let mut forced: Vec<Vertex> = g
        .n_of_set(&set)
        .into_iter()
        .filter(|&u| {
            g.neighbors(u)
                .filter(|x| set.binary_search(x).is_ok())
                .count()
                > k
        })
        .collect();
    forced.sort_unstable();
    if forced.is_empty() {
        return PackingOutcome::NoChange;
    }
    for u in forced {
        if !state.graph.is_alive(u) {
            continue;
        }
        let nu = state.graph.neighbor_vec(u);
        let rhs = nu.len() as i64 - 2;
        state.include(u);
        add_over_originals(state, nu, rhs, Origin::PositiveRhs);
    }
    if state.packing.is_unsatisfied() {
        PackingOutcome::Pruned
    } else {
        PackingOutcome::Changed
    }
}
