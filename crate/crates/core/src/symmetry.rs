//! Automorphisms of small graphs and the orbit-invariance check on optimal weights.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::optimize::OptimizationResult;
use crate::resistance::total_resistance;
use crate::spectral::{fiedler, spectrum};

/// Exhaustive search is limited to this many vertices.
pub const MAX_VERTICES: usize = 10;
/// Group axioms are checked exhaustively up to this order (`|G|²` compositions).
const AXIOM_CHECK_LIMIT: usize = 5040;
pub const DEFAULT_INVARIANCE_TOLERANCE: f64 = 1e-5;

/// Vertex permutations preserving adjacency, with the induced edge orbits.
#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismGroup {
    /// `permutations[k][v]` is the image of vertex `v`; lexicographic order, identity first.
    permutations: Vec<Vec<usize>>,
    /// Edge indices grouped by orbit; each orbit sorted, orbits ordered by first member.
    edge_orbits: Vec<Vec<usize>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.permutations.len()
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.permutations
    }

    pub fn edge_orbits(&self) -> &[Vec<usize>] {
        &self.edge_orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.edge_orbits.len()
    }

    /// Identity membership, closure under composition and inverses, checked exhaustively.
    pub fn verify_group_axioms(&self) -> bool {
        let Some(n) = self.permutations.first().map(Vec::len) else {
            return false;
        };
        let members: HashSet<&[usize]> = self.permutations.iter().map(Vec::as_slice).collect();
        let identity: Vec<usize> = (0..n).collect();
        if !members.contains(identity.as_slice()) {
            return false;
        }
        for a in &self.permutations {
            let mut inverse = vec![0; n];
            for (v, &image) in a.iter().enumerate() {
                inverse[image] = v;
            }
            if !members.contains(inverse.as_slice()) {
                return false;
            }
            for b in &self.permutations {
                let composed: Vec<usize> = b.iter().map(|&v| a[v]).collect();
                if !members.contains(composed.as_slice()) {
                    return false;
                }
            }
        }
        true
    }

    /// True if the orbits are disjoint and cover `0..edge_count`.
    pub fn orbits_partition(&self, edge_count: usize) -> bool {
        let mut seen = vec![false; edge_count];
        for &e in self.edge_orbits.iter().flatten() {
            if e >= edge_count || seen[e] {
                return false;
            }
            seen[e] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Largest `(max - min)/mean` of the weights within one orbit.
    pub fn max_orbit_spread(&self, weights: &[f64]) -> f64 {
        self.edge_orbits
            .iter()
            .map(|orbit| {
                let ws = orbit.iter().map(|&e| weights[e]);
                let max = ws.clone().fold(f64::NEG_INFINITY, f64::max);
                let min = ws.clone().fold(f64::INFINITY, f64::min);
                let mean = ws.sum::<f64>() / orbit.len() as f64;
                (max - min) / mean
            })
            .fold(0.0, f64::max)
    }
}

fn same_weight(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// Enumerates all automorphisms by backtracking with degree pruning.
///
/// With `ignore_weights` only the unweighted skeleton matters; otherwise a
/// permutation must also map every edge to one of equal weight.
pub fn automorphisms(g: &WeightedGraph, ignore_weights: bool) -> Result<AutomorphismGroup> {
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }
    let mut weight = vec![vec![None; n]; n];
    for e in g.edges() {
        let w = if ignore_weights { 1.0 } else { e.weight };
        weight[e.u][e.v] = Some(w);
        weight[e.v][e.u] = Some(w);
    }
    let degree: Vec<usize> = g.adjacency().iter().map(Vec::len).collect();

    let mut permutations = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(
        0,
        &weight,
        &degree,
        &mut image,
        &mut used,
        &mut permutations,
    );

    let edge_orbits = edge_orbits(g, &permutations);
    let group = AutomorphismGroup {
        permutations,
        edge_orbits,
    };
    if group.order() <= AXIOM_CHECK_LIMIT && !group.verify_group_axioms() {
        return Err(Error::Internal("automorphism set is not a group".into()));
    }
    Ok(group)
}

fn extend(
    v: usize,
    weight: &[Vec<Option<f64>>],
    degree: &[usize],
    image: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let n = image.len();
    if v == n {
        out.push(image.to_vec());
        return;
    }
    for w in 0..n {
        if used[w] || degree[w] != degree[v] {
            continue;
        }
        let consistent = (0..v).all(|u| match (weight[u][v], weight[image[u]][w]) {
            (None, None) => true,
            (Some(a), Some(b)) => same_weight(a, b),
            _ => false,
        });
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        extend(v + 1, weight, degree, image, used, out);
        used[w] = false;
    }
    image[v] = usize::MAX;
}

fn edge_orbits(g: &WeightedGraph, permutations: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let m = g.edge_count();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for sigma in permutations {
        for (k, e) in g.edges().iter().enumerate() {
            let mapped = g
                .edge_index(sigma[e.u], sigma[e.v])
                .expect("automorphisms map edges to edges");
            let (a, b) = (find(&mut parent, k), find(&mut parent, mapped));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for k in 0..m {
        let root = find(&mut parent, k);
        if slot[root] == usize::MAX {
            slot[root] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[root]].push(k);
    }
    orbits
}

fn check_group_fits(g: &WeightedGraph, group: &AutomorphismGroup) -> Result<()> {
    let n_ok = group
        .permutations
        .iter()
        .all(|p| p.len() == g.vertex_count());
    if !n_ok || !group.orbits_partition(g.edge_count()) {
        return Err(Error::Mismatch(
            "automorphism group belongs to another graph".into(),
        ));
    }
    Ok(())
}

/// Replaces each weight by the arithmetic mean over its edge orbit, then
/// rescales so the total effective resistance equals the input's.
pub fn orbit_average(g: &WeightedGraph, group: &AutomorphismGroup) -> Result<WeightedGraph> {
    check_group_fits(g, group)?;
    let weights = g.weights();
    let mut averaged = weights.clone();
    for orbit in group.edge_orbits() {
        let mean = orbit.iter().map(|&e| weights[e]).sum::<f64>() / orbit.len() as f64;
        for &e in orbit {
            averaged[e] = mean;
        }
    }
    let target = total_resistance(g)?;
    let candidate = g.with_weights(&averaged)?;
    let factor = total_resistance(&candidate)? / target;
    candidate.scaled(factor)
}

/// Evidence for or against automorphism-invariant optimal weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureVerdict {
    /// `max_orbit_spread <= tolerance`.
    pub invariant: bool,
    pub max_orbit_spread: f64,
    /// `λ₂` after orbit averaging at the same total resistance.
    pub lambda2_after_averaging: f64,
    pub lambda2_optimal: f64,
    pub group_order: usize,
    pub orbit_count: usize,
    pub tolerance: f64,
}

/// Measures how far the optimizer's weights are from being constant on the
/// edge orbits of the unweighted graph.
pub fn check_conjecture(
    g: &WeightedGraph,
    result: &OptimizationResult,
    tol: f64,
) -> Result<ConjectureVerdict> {
    if result.weights.len() != g.edge_count() {
        return Err(Error::Mismatch(format!(
            "{} optimal weights for {} edges",
            result.weights.len(),
            g.edge_count()
        )));
    }
    let group = automorphisms(g, true)?;
    let optimal = g.with_weights(&result.weights)?;
    let spread = group.max_orbit_spread(&result.weights);
    let averaged = orbit_average(&optimal, &group)?;
    let lambda2_after_averaging = fiedler(&spectrum(&averaged)?)?.value;
    Ok(ConjectureVerdict {
        invariant: spread <= tol,
        max_orbit_spread: spread,
        lambda2_after_averaging,
        lambda2_optimal: result.lambda2,
        group_order: group.order(),
        orbit_count: group.orbit_count(),
        tolerance: tol,
    })
}
