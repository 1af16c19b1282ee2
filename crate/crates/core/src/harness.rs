//! Configuration grids and batch runs over a corpus.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::bounds::BoundLadder;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{read_instance, Format};
use crate::reductions::Ladder;
use crate::solver::{solve, Branching, SolveResult, SolverConfig};

/// Stack size for solver threads; the search recurses once per branch.
pub const SOLVER_STACK: usize = 512 << 20;

/// Runs `f` on a fresh thread with a large stack.
pub fn with_big_stack<T: Send, F: FnOnce() -> T + Send>(f: F) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(SOLVER_STACK)
            .spawn_scoped(s, f)
            .expect("spawn solver thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

/// One point of the B × R × L grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridCell {
    pub branching: Branching,
    pub ladder: Ladder,
    pub bounds: BoundLadder,
}

impl Default for GridCell {
    fn default() -> Self {
        GridCell {
            branching: Branching::MaxDegree,
            ladder: Ladder::R4,
            bounds: BoundLadder::L4,
        }
    }
}

impl GridCell {
    pub fn label(&self) -> String {
        format!(
            "{}-{}-{}",
            self.branching.label(),
            self.ladder.label(),
            self.bounds.label()
        )
    }

    /// `b1-r3-l2`, or any subset such as `r0` (missing axes default to b2, r4, l4).
    pub fn parse(s: &str) -> Option<GridCell> {
        let mut cell = GridCell::default();
        for part in s.split('-').filter(|p| !p.is_empty()) {
            if let Some(b) = Branching::parse(part) {
                cell.branching = b;
            } else if let Some(l) = Ladder::parse(part) {
                cell.ladder = l;
            } else {
                cell.bounds = BoundLadder::parse(part)?;
            }
        }
        Some(cell)
    }

    pub fn config(&self, base: &SolverConfig) -> SolverConfig {
        SolverConfig {
            branching: self.branching,
            rules: self.ladder.rules(),
            bounds: self.bounds,
            ..base.clone()
        }
    }
}

/// `all` (75 cells), `branching`, `reductions`, `bounds` (one axis varied,
/// others at b2/r4/l4), or a comma list of cell labels.
pub fn parse_grid(grid: &str) -> Result<Vec<GridCell>> {
    let d = GridCell::default();
    let cells = match grid.trim() {
        "all" => {
            let mut v = Vec::new();
            for branching in Branching::ALL {
                for ladder in Ladder::ALL {
                    for bounds in BoundLadder::ALL {
                        v.push(GridCell {
                            branching,
                            ladder,
                            bounds,
                        });
                    }
                }
            }
            v
        }
        "branching" => Branching::ALL
            .iter()
            .map(|&branching| GridCell { branching, ..d })
            .collect(),
        "reductions" => Ladder::ALL
            .iter()
            .map(|&ladder| GridCell { ladder, ..d })
            .collect(),
        "bounds" => BoundLadder::ALL
            .iter()
            .map(|&bounds| GridCell { bounds, ..d })
            .collect(),
        list => list
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| GridCell::parse(t).ok_or_else(|| Error::Usage(format!("bad grid cell {t:?}"))))
            .collect::<Result<Vec<_>>>()?,
    };
    if cells.is_empty() {
        return Err(Error::Usage("empty grid".into()));
    }
    Ok(cells)
}

/// A corpus entry; unreadable files keep their error message.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: std::result::Result<Graph, String>,
}

/// Every regular file in `dir`, sorted by name.
pub fn load_corpus(dir: &Path, format: Option<Format>, complement: bool) -> Result<Vec<Instance>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| Instance {
            name: p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            graph: read_instance(&p, format, complement)
                .map(|l| l.graph)
                .map_err(|e| e.to_string()),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct AblationRow {
    pub instance: String,
    pub config: String,
    pub size: Option<usize>,
    pub branches: Option<u64>,
    pub elapsed_s: f64,
    pub completed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AblationReport {
    pub rows: Vec<AblationRow>,
}

impl AblationReport {
    /// Columns `instance,config,size,branches,elapsed_s,completed`. With
    /// `timing` off every elapsed value is written as 0.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut out = String::from("instance,config,size,branches,elapsed_s,completed\n");
        for r in &self.rows {
            let size = r.size.map(|s| s.to_string()).unwrap_or_default();
            let branches = r.branches.map(|b| b.to_string()).unwrap_or_default();
            let elapsed = if timing { r.elapsed_s } else { 0.0 };
            let _ = writeln!(
                out,
                "{},{},{},{},{:.6},{}",
                r.instance, r.config, size, branches, elapsed, r.completed
            );
        }
        out
    }

    /// Completed rows of one instance must all report the same size.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let mut seen: std::collections::HashMap<&str, usize> = Default::default();
        for r in self.rows.iter().filter(|r| r.completed) {
            let Some(size) = r.size else { continue };
            match seen.get(r.instance.as_str()) {
                Some(&s) if s != size => {
                    return Err(format!(
                        "instance {} has size {s} and {size} ({})",
                        r.instance, r.config
                    ))
                }
                _ => {
                    seen.insert(&r.instance, size);
                }
            }
        }
        Ok(())
    }

    pub fn row(&self, instance: &str, config: &str) -> Option<&AblationRow> {
        self.rows
            .iter()
            .find(|r| r.instance == instance && r.config == config)
    }

    /// Instances completed by every listed config.
    pub fn solved_by_all(&self, configs: &[String]) -> Vec<String> {
        let mut names: Vec<String> = self.rows.iter().map(|r| r.instance.clone()).collect();
        names.dedup();
        names
            .into_iter()
            .filter(|n| {
                configs
                    .iter()
                    .all(|c| self.row(n, c).is_some_and(|r| r.completed))
            })
            .collect()
    }

    pub fn mean_branches(&self, config: &str, instances: &[String]) -> f64 {
        if instances.is_empty() {
            return 0.0;
        }
        let total: u64 = instances
            .iter()
            .filter_map(|n| self.row(n, config).and_then(|r| r.branches))
            .sum();
        total as f64 / instances.len() as f64
    }
}

fn row_for(instance: &Instance, cell: &GridCell, base: &SolverConfig) -> AblationRow {
    let config = cell.label();
    match &instance.graph {
        Err(e) => AblationRow {
            instance: instance.name.clone(),
            config,
            size: None,
            branches: None,
            elapsed_s: 0.0,
            completed: false,
            error: Some(e.clone()),
        },
        Ok(g) => {
            let r: SolveResult = solve(g, &cell.config(base));
            AblationRow {
                instance: instance.name.clone(),
                config,
                size: Some(r.size),
                branches: Some(r.stats.branches),
                elapsed_s: r.stats.elapsed.as_secs_f64(),
                completed: r.stats.completed,
                error: None,
            }
        }
    }
}

/// Solves every (instance, cell) pair on `jobs` worker threads. Rows come out
/// in instance-major, cell-minor order regardless of scheduling.
pub fn run_ablation(
    instances: &[Instance],
    cells: &[GridCell],
    base: &SolverConfig,
    jobs: usize,
) -> AblationReport {
    let tasks: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..cells.len()).map(move |c| (i, c)))
        .collect();
    let results: Mutex<Vec<Option<AblationRow>>> = Mutex::new(vec![None; tasks.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1) {
            std::thread::Builder::new()
                .stack_size(SOLVER_STACK)
                .spawn_scoped(s, || loop {
                    let t = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&(i, c)) = tasks.get(t) else { break };
                    let row = row_for(&instances[i], &cells[c], base);
                    results.lock().expect("result lock")[t] = Some(row);
                })
                .expect("spawn worker");
        }
    });
    AblationReport {
        rows: results
            .into_inner()
            .expect("result lock")
            .into_iter()
            .map(|r| r.expect("every task ran"))
            .collect(),
    }
}
