//! The ten acceptance criteria, one PASS/FAIL line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use branchvc::bounds::{clique_cover, combined_bound, cycle_bound, BoundLadder};
use branchvc::harness::{run_ablation, with_big_stack, GridCell, Instance};
use branchvc::io::gadget::{gen_sat_gadget, random_3cnf};
use branchvc::io::generate::{gen_random, RandomModel};
use branchvc::io::oct::{oct_reduce, solve_oct};
use branchvc::lp::{lp_bound, Matching};
use branchvc::reductions::{reduce_lp, run_reductions, Ladder, Rule, RuleSet};
use branchvc::solver::Branching;
use branchvc::{is_vertex_cover, solve, Graph, SearchState, SolverConfig};
use common::lp_checks::{check_extreme, check_objective, check_persistency};
use common::session::run_session;
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let mut r = rng(1001);
    for i in 0..1000 {
        let g = random_graph(&mut r, 16);
        let res = solve(&g, &SolverConfig::default());
        ensure(is_vertex_cover(&g, &res.cover), || {
            format!("graph {i}: invalid cover")
        })?;
        let want = oracle_vc(&g);
        ensure(res.size == want && res.cover.len() == want, || {
            format!(
                "graph {i}: {} vs oracle {want} on {:?}",
                res.size,
                g.edges()
            )
        })?;
    }
    Ok("1000 graphs".into())
}

fn grid_soundness() -> Outcome {
    let mut r = rng(1002);
    let mut cells = 0;
    for i in 0..100 {
        let g = random_graph(&mut r, 10);
        let want = oracle_vc(&g);
        for branching in Branching::ALL {
            for ladder in Ladder::ALL {
                for bounds in BoundLadder::ALL {
                    let cfg = SolverConfig {
                        seed: i,
                        ..GridCell {
                            branching,
                            ladder,
                            bounds,
                        }
                        .config(&SolverConfig::default())
                    };
                    let res = solve(&g, &cfg);
                    ensure(is_vertex_cover(&g, &res.cover) && res.size == want, || {
                        format!(
                            "graph {i} {branching:?}/{ladder:?}/{bounds:?}: {} vs {want}",
                            res.size
                        )
                    })?;
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} solves over 75 cells"))
}

fn reduction_differential() -> Outcome {
    let mut r = rng(1003);
    let graphs: Vec<Graph> = (0..300).map(|_| random_graph(&mut r, 14)).collect();
    let opts: Vec<usize> = graphs.iter().map(oracle_vc).collect();
    for rule in Rule::ALL {
        let with = SolverConfig::default();
        let without = SolverConfig {
            rules: RuleSet::all().with(rule, false),
            ..SolverConfig::default()
        };
        for (i, g) in graphs.iter().enumerate() {
            let a = solve(g, &with);
            let b = solve(g, &without);
            ensure(a.size == opts[i] && b.size == opts[i], || {
                format!(
                    "{} graph {i}: on {} off {} oracle {}",
                    rule.name(),
                    a.size,
                    b.size,
                    opts[i]
                )
            })?;
            ensure(is_vertex_cover(g, &b.cover), || {
                format!("{} off graph {i}: invalid cover", rule.name())
            })?;
            if matches!(rule, Rule::Fold2 | Rule::Twin | Rule::Funnel | Rule::Desk) {
                let mut st = SearchState::new(g.clone());
                let out = run_reductions(&mut st, &RuleSet::from_rules(&[rule]), &mut [0; 9]);
                let rest = oracle_cover(&st.graph);
                let cover = st.graph.reconstruct(&rest);
                ensure(is_vertex_cover(g, &cover) && cover.len() == opts[i], || {
                    format!(
                        "{} graph {i}: reconstructed {} vs {}",
                        rule.name(),
                        cover.len(),
                        opts[i]
                    )
                })?;
                ensure(out.delta_cover + rest.len() == opts[i], || {
                    format!("{} graph {i}: size", rule.name())
                })?;
            }
        }
    }
    Ok(format!("{} rules x 300 graphs", Rule::ALL.len()))
}

fn bound_validity() -> Outcome {
    let mut r = rng(1004);
    let mut post_lp = 0;
    for i in 0..500 {
        let g = random_graph(&mut r, 14);
        let opt = oracle_vc(&g);
        for ladder in BoundLadder::ALL {
            let b = combined_bound(&g, &mut Matching::new(), ladder);
            ensure(b <= opt, || {
                format!("graph {i} {ladder:?}: bound {b} > {opt}")
            })?;
        }
        ensure(clique_cover(&g).check(&g).is_ok(), || {
            format!("graph {i}: bad clique cover")
        })?;
        let mut st = SearchState::new(g);
        while reduce_lp(&mut st) > 0 {}
        if st.graph.edge_count() == 0 {
            continue;
        }
        let mut m = Matching::new();
        m.max_matching(&st.graph);
        let (lp, cyc) = (lp_bound(&m), cycle_bound(&st.graph, &m));
        let rest = oracle_vc(&st.graph);
        ensure(lp <= cyc && cyc <= rest, || {
            format!("graph {i}: lp {lp} cycle {cyc} opt {rest}")
        })?;
        post_lp += 1;
    }
    Ok(format!("500 graphs, {post_lp} nonempty after LP"))
}

fn corpus() -> Vec<Instance> {
    let mut r = rng(1005);
    let mut out = Vec::new();
    for i in 0..10 {
        let n = 6 + i % 5;
        let m = r.gen_range(4 * n..=5 * n);
        let cnf = random_3cnf(n, m, &mut r);
        out.push(Instance {
            name: format!("gadget{i}"),
            graph: Ok(gen_sat_gadget(&cnf).graph),
        });
    }
    for i in 0..10 {
        let n = r.gen_range(40..=60);
        let p = 5.0 / n as f64;
        out.push(Instance {
            name: format!("sparse{i}"),
            graph: Ok(gen_random(RandomModel::Gnp { n, p }, 50 + i)),
        });
    }
    out
}

fn ablation_trend() -> Outcome {
    let instances = corpus();
    let base = SolverConfig {
        time_limit: Some(Duration::from_secs(10)),
        ..SolverConfig::default()
    };
    let mut cells: Vec<GridCell> = Ladder::ALL
        .iter()
        .map(|&ladder| GridCell {
            ladder,
            ..GridCell::default()
        })
        .collect();
    cells.push(GridCell {
        branching: Branching::Random,
        ..GridCell::default()
    });
    let report = run_ablation(&instances, &cells, &base, 1);
    report.check_consistency()?;
    let labels: Vec<String> = cells.iter().map(GridCell::label).collect();
    let ladder_labels = &labels[..5];
    let common = report.solved_by_all(ladder_labels);
    ensure(!common.is_empty(), || {
        "no instance solved by every ladder step".into()
    })?;
    let means: Vec<f64> = ladder_labels
        .iter()
        .map(|c| report.mean_branches(c, &common))
        .collect();
    let shown: Vec<String> = Ladder::ALL
        .iter()
        .zip(&means)
        .map(|(l, m)| format!("{}={m:.1}", l.label()))
        .collect();
    ensure(means[0] > means[4], || {
        format!("mean branches not lower at r4: {}", shown.join(" "))
    })?;
    ensure(means.windows(2).all(|w| w[1] <= w[0]), || {
        format!("mean branches rise along the ladder: {}", shown.join(" "))
    })?;
    let (b2, b0) = (&labels[4], &labels[5]);
    for inst in &instances {
        let by_b0 = report.row(&inst.name, b0).is_some_and(|r| r.completed);
        let by_b2 = report.row(&inst.name, b2).is_some_and(|r| r.completed);
        ensure(!by_b0 || by_b2, || {
            format!("{} solved by b0 but not b2", inst.name)
        })?;
    }
    let b0_solved = instances
        .iter()
        .filter(|i| report.row(&i.name, b0).is_some_and(|r| r.completed))
        .count();
    let b2_solved = instances
        .iter()
        .filter(|i| report.row(&i.name, b2).is_some_and(|r| r.completed))
        .count();
    Ok(format!(
        "{} of 20 solved by r0..r4, mean branches {}; b0 solved {b0_solved}, b2 solved {b2_solved}",
        common.len(),
        shown.join(" ")
    ))
}

fn forests() -> Outcome {
    let mut r = rng(1006);
    for i in 0..200 {
        let n = r.gen_range(1..=200);
        let trees = r.gen_range(1..=10);
        let g = gen_random(RandomModel::Forest { n, trees }, 6000 + i);
        for ladder in [Ladder::R1, Ladder::R2, Ladder::R3, Ladder::R4] {
            let cfg = SolverConfig {
                rules: ladder.rules(),
                ..SolverConfig::default()
            };
            let res = solve(&g, &cfg);
            ensure(
                res.stats.branches == 0 && is_vertex_cover(&g, &res.cover),
                || format!("forest {i} {ladder:?}: {} branches", res.stats.branches),
            )?;
        }
    }
    Ok("200 forests at r1..r4".into())
}

fn gadget_theorem() -> Outcome {
    let mut r = rng(1007);
    let (mut sat, mut unsat) = (0, 0);
    for i in 0..100 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=8);
        let cnf = random_3cnf(n, m, &mut r);
        let gadget = gen_sat_gadget(&cnf);
        let g = &gadget.graph;
        let target = n + 2 * m;
        let clauses: Vec<[(usize, bool); 3]> = cnf
            .clauses
            .iter()
            .map(|c| [0, 1, 2].map(|k| (c[k].var, c[k].negated)))
            .collect();
        let is_sat = truth_table_sat(n, &clauses);
        let opt = oracle_vc(g);
        ensure((opt == target) == is_sat && opt >= target, || {
            format!("formula {i}: opt {opt}, n+2m {target}, sat {is_sat}")
        })?;
        ensure(
            gadget.clique_cover.check(g).is_ok() && gadget.cycle_cover.check(g).is_ok(),
            || format!("formula {i}: canonical covers invalid"),
        )?;
        ensure(
            gadget.clique_cover.bound() == target && gadget.cycle_cover.bound() == target,
            || format!("formula {i}: canonical bounds differ from n+2m"),
        )?;
        let res = solve(g, &SolverConfig::default());
        ensure(res.size == opt, || {
            format!("formula {i}: solver {} vs {opt}", res.size)
        })?;
        if is_sat {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    Ok(format!("{sat} satisfiable, {unsat} unsatisfiable"))
}

fn oct_pipeline() -> Outcome {
    let mut r = rng(1008);
    for i in 0..200 {
        let g = random_graph(&mut r, 10);
        let inst = oct_reduce(&g);
        let (n, e) = (g.n_total(), g.edge_count());
        ensure(
            inst.doubled.n_total() == 2 * n && inst.doubled.edge_count() == 2 * e + n,
            || format!("graph {i}: doubled graph has wrong shape"),
        )?;
        let res = solve_oct(&g, &SolverConfig::default());
        let want = enumerated_oct(&g);
        ensure(
            res.transversal.len() == want && bipartite_after_removing(&g, &res.transversal),
            || {
                format!(
                    "graph {i}: oct {} vs {want} on {:?}",
                    res.transversal.len(),
                    g.edges()
                )
            },
        )?;
    }
    Ok("200 graphs".into())
}

fn rollback() -> Outcome {
    let mut r = rng(1009);
    for i in 0..1000 {
        let g = random_graph(&mut r, 20);
        run_session(g, &mut r, 50).map_err(|e| format!("session {i}: {e}"))?;
    }
    Ok("1000 sessions".into())
}

fn lp_machinery() -> Outcome {
    let mut r = rng(1010);
    for _ in 0..300 {
        let g = random_graph(&mut r, 12);
        check_persistency(&g)?;
        check_objective(&g)?;
    }
    for _ in 0..300 {
        check_extreme(&random_graph(&mut r, 10))?;
    }
    Ok("300 persistency (n<=12), 300 extremality (n<=10)".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("configuration grid soundness", grid_soundness),
        ("reduction differential soundness", reduction_differential),
        ("bound validity and dominance", bound_validity),
        ("ablation trend", ablation_trend),
        ("forest zero branches", forests),
        ("gadget theorem", gadget_theorem),
        ("oct pipeline", oct_pipeline),
        ("rollback bit-exactness", rollback),
        ("lp machinery", lp_machinery),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| with_big_stack(*f)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {secs:.1}s)", k + 1),
            Err(why) => {
                println!("FAIL {}: {name} ({why}; {secs:.1}s)", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
