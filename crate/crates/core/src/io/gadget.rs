//! 3-CNF formulas and the vertex cover gadget whose optimum is `n + 2m`
//! exactly when the formula is satisfiable.
//!
//! Vertex ids: `v_i = 2i`, `v̄_i = 2i + 1`, clause vertex `u_{j,k} = 2n + 3j + k`.

use rand::Rng;

use crate::bounds::{CliqueCover, CycleCover};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    fn dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

/// Signed integer literals, each clause terminated by `0`. Lines starting with
/// `c` or `p` are skipped; every clause must have exactly three literals.
pub fn parse_cnf(text: &str) -> Result<Cnf> {
    let mut num_vars = 0;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if let Some(n) = line.split_whitespace().nth(2).and_then(|t| t.parse().ok()) {
                num_vars = num_vars.max(n);
            }
            continue;
        }
        for token in line.split_whitespace() {
            let lit: i64 = token.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad literal {token:?}"),
            })?;
            if lit == 0 {
                match current.len() {
                    0 => return Err(Error::EmptyClause { line: line_no }),
                    3 => clauses.push([current[0], current[1], current[2]]),
                    count => {
                        return Err(Error::ClauseWidth {
                            line: line_no,
                            count,
                        })
                    }
                }
                current.clear();
            } else {
                let var = lit.unsigned_abs() as usize - 1;
                num_vars = num_vars.max(var + 1);
                current.push(Literal {
                    var,
                    negated: lit < 0,
                });
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::Parse {
            line: last_line,
            msg: "clause not terminated by 0".into(),
        });
    }
    Ok(Cnf { num_vars, clauses })
}

pub fn write_cnf(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len());
    for c in &cnf.clauses {
        out.push_str(&format!(
            "{} {} {} 0\n",
            c[0].dimacs(),
            c[1].dimacs(),
            c[2].dimacs()
        ));
    }
    out
}

/// Truth-table check (at most 24 variables).
pub fn is_satisfiable(cnf: &Cnf) -> bool {
    assert!(cnf.num_vars <= 24, "truth table too large");
    (0u32..1 << cnf.num_vars).any(|assign| {
        cnf.clauses
            .iter()
            .all(|c| c.iter().any(|l| (assign >> l.var & 1 == 1) != l.negated))
    })
}

/// Uniform random literals, repeats allowed.
pub fn random_3cnf<R: Rng>(n: usize, m: usize, rng: &mut R) -> Cnf {
    let lit = |rng: &mut R| Literal {
        var: rng.gen_range(0..n),
        negated: rng.gen_bool(0.5),
    };
    let clauses = (0..m).map(|_| [lit(rng), lit(rng), lit(rng)]).collect();
    Cnf {
        num_vars: n,
        clauses,
    }
}

pub fn random_3cnf_seeded(n: usize, m: usize, seed: u64) -> Cnf {
    use rand::SeedableRng;
    random_3cnf(n, m, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Clone, Debug)]
pub struct SatGadget {
    pub graph: Graph,
    pub clique_cover: CliqueCover,
    pub cycle_cover: CycleCover,
    pub num_vars: usize,
    pub num_clauses: usize,
}

impl SatGadget {
    /// `n + 2m`.
    pub fn target(&self) -> usize {
        self.num_vars + 2 * self.num_clauses
    }
}

fn literal_vertex(l: Literal) -> Vertex {
    2 * l.var + l.negated as usize
}

pub fn gen_sat_gadget(cnf: &Cnf) -> SatGadget {
    let n = cnf.num_vars;
    let m = cnf.clauses.len();
    let mut edges = Vec::new();
    let mut parts = Vec::new();
    for i in 0..n {
        edges.push((2 * i, 2 * i + 1));
        parts.push(vec![2 * i, 2 * i + 1]);
    }
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let u = |k: usize| 2 * n + 3 * j + k;
        edges.extend([(u(0), u(1)), (u(1), u(2)), (u(0), u(2))]);
        for (k, &l) in clause.iter().enumerate() {
            edges.push((u(k), literal_vertex(l)));
        }
        parts.push(vec![u(0), u(1), u(2)]);
    }
    SatGadget {
        graph: Graph::from_edges(2 * n + 3 * m, &edges),
        clique_cover: CliqueCover {
            cliques: parts.clone(),
        },
        cycle_cover: CycleCover { cycles: parts },
        num_vars: n,
        num_clauses: m,
    }
}

/// Human-readable labels: `x1`, `~x1`, ..., `c1_1`, `c1_2`, `c1_3`, ...
pub fn gadget_labels(cnf: &Cnf) -> Vec<String> {
    let mut labels = Vec::new();
    for i in 1..=cnf.num_vars {
        labels.push(format!("x{i}"));
        labels.push(format!("~x{i}"));
    }
    for j in 1..=cnf.clauses.len() {
        for k in 1..=3 {
            labels.push(format!("c{j}_{k}"));
        }
    }
    labels
}

/// Parses a CNF file and builds its gadget (labelled).
pub fn parse_cnf_gadget(text: &str) -> Result<crate::io::LabeledGraph> {
    let cnf = parse_cnf(text)?;
    Ok(crate::io::LabeledGraph {
        graph: gen_sat_gadget(&cnf).graph,
        labels: gadget_labels(&cnf),
    })
}
