//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RandomModel {
    /// Erdős–Rényi: each pair independently with probability `p`.
    Gnp { n: usize, p: f64 },
    /// Uniform random recursive tree on a shuffled vertex order.
    Tree { n: usize },
    /// A random tree split into `trees` components.
    Forest { n: usize, trees: usize },
    /// Chung–Lu graph with weights `i^(-1/(exponent-1))` scaled to the mean degree.
    PowerLaw {
        n: usize,
        avg_degree: f64,
        exponent: f64,
    },
}

pub fn gen_random(model: RandomModel, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        RandomModel::Gnp { n, p } => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p.clamp(0.0, 1.0)) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges)
        }
        RandomModel::Tree { n } => Graph::from_edges(n, &tree_edges(n, &mut rng)),
        RandomModel::Forest { n, trees } => {
            let mut edges = tree_edges(n, &mut rng);
            edges.shuffle(&mut rng);
            let drop = trees.saturating_sub(1).min(edges.len());
            Graph::from_edges(n, &edges[drop..])
        }
        RandomModel::PowerLaw {
            n,
            avg_degree,
            exponent,
        } => {
            let raw: Vec<f64> = (1..=n)
                .map(|i| (i as f64).powf(-1.0 / (exponent - 1.0)))
                .collect();
            let sum: f64 = raw.iter().sum();
            let scale = avg_degree * n as f64 / sum.max(f64::MIN_POSITIVE);
            let w: Vec<f64> = raw.iter().map(|x| x * scale).collect();
            let total: f64 = w.iter().sum();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool((w[u] * w[v] / total).min(1.0)) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges)
        }
    }
}

fn tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| (order[rng.gen_range(0..i)], order[i]))
        .collect()
}
