//! Random mutate/branch/rollback sessions on a search state.

use branchvc::packing::{create_branch_constraints, Side};
use branchvc::reductions::{apply, run_reductions, Rule, RuleSet};
use branchvc::{Graph, SearchState};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn pick_vertex(st: &SearchState, rng: &mut ChaCha8Rng) -> Option<usize> {
    let cand: Vec<usize> = st
        .graph
        .alive_vertices()
        .filter(|&v| st.graph.degree(v) > 0)
        .collect();
    cand.choose(rng).copied()
}

fn check(st: &SearchState) -> Result<(), String> {
    st.graph.check_invariants()?;
    st.packing.check_invariants()?;
    let cap = 2 * st.graph.edges_inserted();
    if st.packing.total_slots() > cap {
        return Err(format!(
            "{} constraint slots exceed {cap}",
            st.packing.total_slots()
        ));
    }
    Ok(())
}

/// Runs `steps` random operations, checking after each rollback that the
/// state equals its snapshot at the matching checkpoint, and finally that
/// unwinding everything restores the start.
pub fn run_session(g: Graph, rng: &mut ChaCha8Rng, steps: usize) -> Result<(), String> {
    let mut st = SearchState::new(g);
    let start = st.snapshot();
    let base = st.checkpoint();
    let mut stack = Vec::new();
    for step in 0..steps {
        match rng.gen_range(0..7) {
            0 | 1 => {
                let snap = st.snapshot();
                stack.push((st.checkpoint(), snap));
            }
            2 => {
                if let Some((mark, snap)) = stack.pop() {
                    st.rollback(mark);
                    if st.snapshot() != snap {
                        return Err(format!("step {step}: rollback mismatch"));
                    }
                }
            }
            3 => {
                if let Some(v) = pick_vertex(&st, rng) {
                    create_branch_constraints(&mut st, v, Side::Include);
                    st.include(v);
                }
            }
            4 => {
                if let Some(v) = pick_vertex(&st, rng) {
                    create_branch_constraints(&mut st, v, Side::Exclude);
                    st.exclude(v);
                }
            }
            5 => {
                let rule = *Rule::ALL.choose(rng).unwrap();
                apply(&mut st, rule);
            }
            _ => {
                let mut fires = [0; 9];
                run_reductions(&mut st, &RuleSet::all(), &mut fires);
            }
        }
        check(&st).map_err(|e| format!("step {step}: {e}"))?;
    }
    while let Some((mark, snap)) = stack.pop() {
        st.rollback(mark);
        if st.snapshot() != snap {
            return Err("final unwind mismatch".into());
        }
    }
    st.rollback(base);
    if st.snapshot() != start {
        return Err("start state not restored".into());
    }
    Ok(())
}
