//! Exhaustive oracles for small graphs. They use no reduction rules.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const BRUTE_FORCE_CAP: usize = 20;

fn adjacency_masks(g: &Graph) -> Result<Vec<u32>> {
    let n = g.n_total();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut adj = vec![0u32; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(adj)
}

fn bits(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Minimum vertex cover of the alive part of `g` by two-way branching on the
/// lowest vertex that still has an edge.
pub fn brute_force_vc(g: &Graph) -> Result<(usize, Vec<Vertex>)> {
    let adj = adjacency_masks(g)?;
    let alive = g.alive_vertices().fold(0u32, |m, v| m | 1 << v);
    let mut best = (u32::MAX, 0u32);
    fn go(adj: &[u32], rest: u32, chosen: u32, best: &mut (u32, u32)) {
        let size = chosen.count_ones();
        if size >= best.0 {
            return;
        }
        let mut scan = rest;
        let mut pick = None;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if adj[v] & rest != 0 {
                pick = Some(v);
                break;
            }
        }
        let Some(v) = pick else {
            *best = (size, chosen);
            return;
        };
        let bit = 1u32 << v;
        go(adj, rest & !bit, chosen | bit, best);
        let nb = adj[v] & rest;
        go(adj, rest & !bit & !nb, chosen | nb, best);
    }
    go(&adj, alive, 0, &mut best);
    Ok((best.0 as usize, bits(best.1)))
}

/// Minimum vertex cover by enumerating every subset (n ≤ 16), used to
/// validate [`brute_force_vc`].
pub fn exhaustive_vc(g: &Graph) -> Result<usize> {
    let n = g.n_total();
    if n > 16 {
        return Err(Error::TooLarge { n, cap: 16 });
    }
    let edges = g.edges();
    Ok((0u32..1 << n)
        .filter(|&s| {
            edges
                .iter()
                .all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1)
        })
        .map(u32::count_ones)
        .min()
        .unwrap_or(0) as usize)
}

/// Whether `g` minus `removed` is bipartite.
pub fn is_bipartite_without(g: &Graph, removed: &[Vertex]) -> bool {
    let n = g.n_total();
    let mut gone = vec![false; n];
    for &v in removed {
        gone[v] = true;
    }
    let mut color = vec![u8::MAX; n];
    for s in g.alive_vertices() {
        if gone[s] || color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                if gone[u] {
                    continue;
                }
                if color[u] == u8::MAX {
                    color[u] = 1 - color[v];
                    stack.push(u);
                } else if color[u] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Minimum odd cycle transversal by enumerating subsets in size order.
pub fn brute_force_oct(g: &Graph) -> Result<(usize, Vec<Vertex>)> {
    let n = g.n_total();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut masks: Vec<u32> = (0u32..1 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for m in masks {
        let set = bits(m);
        if is_bipartite_without(g, &set) {
            return Ok((set.len(), set));
        }
    }
    unreachable!("removing every vertex leaves a bipartite graph")
}
