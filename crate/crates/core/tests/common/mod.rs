#![allow(dead_code)]

pub mod cli;

use fiedler::WeightedGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `e^U[-2, 2]`.
pub fn log_uniform_weight(rng: &mut impl Rng) -> f64 {
    rng.random_range(-2.0f64..=2.0).exp()
}

/// Random spanning tree on shuffled vertices plus each remaining pair with probability `p_extra`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p_extra: f64) -> WeightedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut triples = Vec::new();
    let mut present = vec![vec![false; n]; n];
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        let child = order[k];
        present[parent][child] = true;
        present[child][parent] = true;
        triples.push((parent, child, log_uniform_weight(rng)));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !present[i][j] && rng.random_bool(p_extra) {
                triples.push((i, j, log_uniform_weight(rng)));
            }
        }
    }
    WeightedGraph::from_triples(n, &triples).unwrap()
}

/// Connected graph with `n` drawn from `2..=max_n` and a random edge density.
pub fn random_corpus_graph(rng: &mut impl Rng, max_n: usize) -> WeightedGraph {
    let n = rng.random_range(2..=max_n);
    let p = rng.random_range(0.0..0.6);
    random_connected(rng, n, p)
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> WeightedGraph {
    random_connected(rng, n, 0.0)
}

pub fn random_path(rng: &mut impl Rng, n: usize) -> WeightedGraph {
    let w: Vec<f64> = (0..n - 1).map(|_| log_uniform_weight(rng)).collect();
    WeightedGraph::path(n, &w).unwrap()
}

/// Path whose weights satisfy `c_i = c_{n-i}`.
pub fn random_symmetric_path(rng: &mut impl Rng, n: usize) -> WeightedGraph {
    let m = n - 1;
    let mut w = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let c = log_uniform_weight(rng);
        w[i] = c;
        w[m - 1 - i] = c;
    }
    WeightedGraph::path(n, &w).unwrap()
}

/// Two graphs glued at one vertex.
///
/// Returns the glued graph, the cut vertex, a vertex on the first side and a
/// vertex on the second side (all in glued numbering), plus the two parts
/// with the positions of the cut vertex and the chosen vertex inside each.
pub struct Gluing {
    pub glued: WeightedGraph,
    pub w1: usize,
    pub w2: usize,
    pub left: WeightedGraph,
    pub left_cut: usize,
    pub left_w1: usize,
    pub right: WeightedGraph,
    pub right_cut: usize,
    pub right_w2: usize,
}

pub fn random_gluing(rng: &mut impl Rng) -> Gluing {
    let left = random_corpus_graph(rng, 5);
    let right = random_corpus_graph(rng, 5);
    let (nl, nr) = (left.vertex_count(), right.vertex_count());
    let left_cut = rng.random_range(0..nl);
    let right_cut = rng.random_range(0..nr);
    let left_w1 = (left_cut + rng.random_range(1..nl)) % nl;
    let right_w2 = (right_cut + rng.random_range(1..nr)) % nr;

    // right vertices: the cut maps onto left_cut, the rest follow the left side
    let map_right = |v: usize| -> usize {
        if v == right_cut {
            left_cut
        } else if v < right_cut {
            nl + v
        } else {
            nl + v - 1
        }
    };
    let mut triples: Vec<(usize, usize, f64)> =
        left.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
    triples.extend(
        right
            .edges()
            .iter()
            .map(|e| (map_right(e.u), map_right(e.v), e.weight)),
    );
    let glued = WeightedGraph::from_triples(nl + nr - 1, &triples).unwrap();
    Gluing {
        glued,
        w1: left_w1,
        w2: map_right(right_w2),
        left,
        left_cut,
        left_w1,
        right,
        right_cut,
        right_w2,
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Central finite differences of `f` with respect to each edge weight.
pub fn finite_difference<F>(g: &WeightedGraph, step: f64, mut f: F) -> Vec<f64>
where
    F: FnMut(&WeightedGraph) -> f64,
{
    let w = g.weights();
    (0..w.len())
        .map(|k| {
            let mut plus = w.clone();
            let mut minus = w.clone();
            plus[k] += step;
            minus[k] -= step;
            let fp = f(&g.with_weights(&plus).unwrap());
            let fm = f(&g.with_weights(&minus).unwrap());
            (fp - fm) / (2.0 * step)
        })
        .collect()
}
