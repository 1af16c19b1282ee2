//! Oracles and generators shared by the integration suites. Apart from the
//! session driver, nothing here calls into the solver's reduction or bounding code.
#![allow(dead_code)]

pub mod lp_checks;
pub mod session;

use branchvc::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edge list of a random graph from one of several models, chosen by `rng`.
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    if n < 2 {
        return edges;
    }
    match rng.gen_range(0..5) {
        0 | 1 => {
            let p: f64 = rng.gen_range(0.1..0.7);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
        2 => {
            for v in 1..n {
                edges.push((rng.gen_range(0..v), v));
            }
            for _ in 0..rng.gen_range(0..n) {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v {
                    edges.push((u, v));
                }
            }
        }
        3 => {
            // sparse, degree around three
            for _ in 0..(3 * n / 2) {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v {
                    edges.push((u, v));
                }
            }
        }
        _ => {
            // dense
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.8) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    edges
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let edges = random_edges(rng, n);
    Graph::from_edges(n, &edges)
}

fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.n_total() <= 64);
    let mut adj = vec![0u64; g.n_total()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn cover_mask(adj: &[u64], set: u64) -> u64 {
    let mut best_v = usize::MAX;
    let mut best_d = 0;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & set).count_ones();
        if d > best_d {
            best_d = d;
            best_v = v;
        }
    }
    if best_d == 0 {
        return 0;
    }
    let mut rest = set;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let nb = adj[u] & set;
        if nb.count_ones() == 1 {
            // the neighbour of a degree-1 vertex is in some minimum cover
            return nb | cover_mask(adj, set & !nb & !(1 << u));
        }
    }
    let v = best_v;
    let nb = adj[v] & set;
    let take = 1 << v | cover_mask(adj, set & !(1 << v));
    let skip = nb | cover_mask(adj, set & !nb & !(1 << v));
    if take.count_ones() <= skip.count_ones() {
        take
    } else {
        skip
    }
}

/// Minimum vertex cover size over the alive vertices of `g` (at most 64 slots).
pub fn oracle_vc(g: &Graph) -> usize {
    oracle_cover(g).len()
}

/// One minimum cover of the alive part of `g`, as vertex ids.
pub fn oracle_cover(g: &Graph) -> Vec<usize> {
    let adj = masks(g);
    let alive = g.alive_vertices().fold(0u64, |m, v| m | 1 << v);
    let m = cover_mask(&adj, alive);
    (0..64).filter(|&v| m >> v & 1 == 1).collect()
}

/// All minimum covers of the alive part of `g`, as bitmasks (n ≤ 16).
pub fn all_min_covers(g: &Graph) -> Vec<u32> {
    let n = g.n_total();
    assert!(n <= 16);
    let edges = g.edges();
    let alive = g.alive_vertices().fold(0u32, |m, v| m | 1 << v);
    let k = oracle_vc(g) as u32;
    (0u32..1 << n)
        .filter(|&s| s & !alive == 0 && s.count_ones() == k)
        .filter(|&s| {
            edges
                .iter()
                .all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1)
        })
        .collect()
}

/// Every half-integral LP optimum over the alive vertices, each as a vector
/// of doubled values indexed like `alive`. Returns (alive, optimum * 2, optima).
pub fn lp_optima(g: &Graph) -> (Vec<usize>, usize, Vec<Vec<u8>>) {
    let alive: Vec<usize> = g.alive_vertices().collect();
    let pos: Vec<usize> = {
        let mut p = vec![usize::MAX; g.n_total()];
        for (i, &v) in alive.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (pos[u], pos[v])).collect();
    let k = alive.len();
    let mut best = usize::MAX;
    let mut optima = Vec::new();
    let mut x = vec![0u8; k];
    let total = 3usize.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        for slot in x.iter_mut() {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        if edges.iter().any(|&(u, v)| x[u] + x[v] < 2) {
            continue;
        }
        let obj: usize = x.iter().map(|&a| a as usize).sum();
        if obj < best {
            best = obj;
            optima.clear();
        }
        if obj == best {
            optima.push(x.clone());
        }
    }
    if k == 0 {
        best = 0;
    }
    (alive, best, optima)
}

/// True if every nonempty independent set I of the alive part has |N(I)| > |I|
/// (no crown). Isolated vertices are ignored. Enumerates subsets, so n ≤ 16.
pub fn has_positive_surplus(g: &Graph) -> bool {
    assert!(g.n_total() <= 16);
    let adj = masks(g);
    let alive: Vec<usize> = g.alive_vertices().filter(|&v| adj[v] != 0).collect();
    let k = alive.len();
    for code in 1u32..1 << k {
        let set = (0..k)
            .filter(|&i| code >> i & 1 == 1)
            .fold(0u64, |m, i| m | 1 << alive[i]);
        let nb = (0..64)
            .filter(|&v| set >> v & 1 == 1)
            .fold(0u64, |m, v| m | adj[v]);
        if nb & set != 0 {
            continue;
        }
        if nb.count_ones() <= set.count_ones() {
            return false;
        }
    }
    true
}

/// Minimum cover size by plain subset enumeration (n ≤ 16).
pub fn enumerated_vc(g: &Graph) -> usize {
    let n = g.n_total();
    assert!(n <= 16);
    let edges = g.edges();
    (0u32..1 << n)
        .filter(|&s| {
            edges
                .iter()
                .all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1)
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

fn two_colourable(n: usize, edges: &[(usize, usize)], removed: u32) -> bool {
    let mut colour = vec![u8::MAX; n];
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if removed >> u & 1 == 0 && removed >> v & 1 == 0 {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    stack.push(v);
                } else if colour[v] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Minimum odd cycle transversal by subset enumeration (n ≤ 16).
pub fn enumerated_oct(g: &Graph) -> usize {
    let n = g.n_total();
    assert!(n <= 16);
    let edges = g.edges();
    (0u32..1 << n)
        .filter(|&s| two_colourable(n, &edges, s))
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

pub fn bipartite_after_removing(g: &Graph, removed: &[usize]) -> bool {
    let mask = removed.iter().fold(0u32, |m, &v| m | 1 << v);
    two_colourable(g.n_total(), &g.edges(), mask)
}

/// Truth-table satisfiability: `clauses` hold (variable, negated) triples.
pub fn truth_table_sat(num_vars: usize, clauses: &[[(usize, bool); 3]]) -> bool {
    (0u32..1 << num_vars).any(|a| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&(x, neg)| (a >> x & 1 == 1) != neg))
    })
}
