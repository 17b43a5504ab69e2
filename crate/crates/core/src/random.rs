//! Seeded generators for random graphs, hypergraphs, measures and partitions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Hypergraph, Partition, Vertex};
use crate::transport::{Measure, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus each remaining pair independently with probability `p`.
pub fn connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent, order[i]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// A connected graph with every degree at least two; deficient vertices get
/// extra edges to random non-neighbours. Needs `n >= 3`.
pub fn min_degree_two_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    assert!(n >= 3, "minimum degree two needs at least three vertices");
    let g = connected_graph(rng, n, p);
    let mut edges = g.edges().to_vec();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    for v in 0..n {
        while degree[v] < 2 {
            let candidates: Vec<Vertex> = (0..n)
                .filter(|&w| w != v && !edges.contains(&(v.min(w), v.max(w))))
                .collect();
            let &w = candidates.choose(rng).expect("n >= 3 leaves a free partner");
            edges.push((v.min(w), v.max(w)));
            degree[v] += 1;
            degree[w] += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// `m` hyperedges with sizes in `2..=max_size`, no repeated vertex inside a hyperedge.
pub fn hypergraph(rng: &mut impl Rng, n: usize, m: usize, max_size: usize) -> Hypergraph {
    assert!(n >= 2 && max_size >= 2);
    let vertices: Vec<Vertex> = (0..n).collect();
    let edges: Vec<Vec<Vertex>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(2..=max_size.min(n));
            vertices.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    Hypergraph::from_hyperedges(n, &edges)
}

/// As [`hypergraph`], resampled until the associated graph is connected.
pub fn connected_hypergraph(rng: &mut impl Rng, n: usize, m: usize, max_size: usize) -> Hypergraph {
    loop {
        let h = hypergraph(rng, n, m, max_size);
        if h.connected_components().len() == 1 {
            return h;
        }
    }
}

/// A measure on `support_size` random vertices of `candidates` with integer
/// weights in `1..=max_weight`, normalised.
pub fn measure(rng: &mut impl Rng, candidates: &[Vertex], support_size: usize, max_weight: i128) -> Measure {
    let support: Vec<Vertex> = candidates.choose_multiple(rng, support_size).copied().collect();
    let weights: Vec<i128> = support.iter().map(|_| rng.gen_range(1..=max_weight)).collect();
    let total: i128 = weights.iter().sum();
    Measure::new(
        support
            .into_iter()
            .zip(weights)
            .map(|(v, w)| (v, Rational::new(w, total))),
    )
    .expect("normalised positive weights")
}

/// Labels drawn uniformly from `0..blocks`.
pub fn partition(rng: &mut impl Rng, n: usize, blocks: usize) -> Partition {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks.max(1))).collect();
    Partition::from_labels(&labels)
}
