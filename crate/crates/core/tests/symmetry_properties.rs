mod common;

use common::*;
use fiedler::optimize::maximize_connectivity;
use fiedler::resistance::total_resistance;
use fiedler::spectral::algebraic_connectivity;
use fiedler::symmetry::{automorphisms, check_conjecture, orbit_average};
use fiedler::{OptimizerConfig, WeightedGraph};

fn preserves_edges(g: &WeightedGraph, p: &[usize]) -> bool {
    g.edges().iter().all(|e| g.has_edge(p[e.u], p[e.v]))
}

#[test]
fn groups_are_closed_and_act_on_edges() {
    let mut rng = rng(41);
    for _ in 0..100 {
        let g = random_corpus_graph(&mut rng, 7);
        let group = automorphisms(&g, true).unwrap();
        assert!(group.verify_group_axioms());
        assert!(group.orbits_partition(g.edge_count()));
        let n = g.vertex_count();
        assert!(group
            .permutations()
            .iter()
            .any(|p| (0..n).all(|v| p[v] == v)));
        for p in group.permutations() {
            assert!(preserves_edges(&g, p));
        }
        // order divides n!
        let factorial: usize = (1..=n).product();
        assert_eq!(factorial % group.order(), 0);
        // weighted symmetries form a subgroup
        let weighted = automorphisms(&g, false).unwrap();
        assert_eq!(group.order() % weighted.order(), 0);
    }
}

#[test]
fn orbit_averaging_keeps_total_resistance() {
    let mut rng = rng(42);
    for _ in 0..100 {
        let g = random_corpus_graph(&mut rng, 7);
        let group = automorphisms(&g, true).unwrap();
        let avg = orbit_average(&g, &group).unwrap();
        assert!(
            rel_err(
                total_resistance(&avg).unwrap(),
                total_resistance(&g).unwrap()
            ) <= 1e-10
        );
        assert!(
            group.max_orbit_spread(&avg.weights())
                <= 1e-12 * avg.weights().iter().fold(1.0, |a, b| b.max(a))
        );
    }
}

#[test]
fn orbit_averaging_on_p4_does_not_hurt_connectivity() {
    // recorded, not asserted
    let mut rng = rng(43);
    let mut improved = 0;
    for _ in 0..200 {
        let w: Vec<f64> = (0..3).map(|_| log_uniform_weight(&mut rng)).collect();
        let g = WeightedGraph::path(4, &w).unwrap();
        let avg = orbit_average(&g, &automorphisms(&g, true).unwrap()).unwrap();
        if algebraic_connectivity(&avg).unwrap() >= algebraic_connectivity(&g).unwrap() - 1e-10 {
            improved += 1;
        }
    }
    eprintln!("orbit averaging kept or raised lambda2 on {improved}/200 weighted P4");
}

#[test]
fn conjecture_holds_on_small_paths() {
    for n in 3..=6 {
        let g = WeightedGraph::path(n, &vec![1.0; n - 1]).unwrap();
        let res = maximize_connectivity(&g, &OptimizerConfig::default()).unwrap();
        let verdict = check_conjecture(&g, &res, 1e-5).unwrap();
        assert!(
            verdict.invariant,
            "P{n}: spread {}",
            verdict.max_orbit_spread
        );
        assert_eq!(verdict.group_order, 2);
        assert_eq!(verdict.orbit_count, n / 2);
    }
}

#[test]
fn star_optimum_is_uniform() {
    let g = WeightedGraph::from_triples(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
    let res = maximize_connectivity(&g, &OptimizerConfig::default()).unwrap();
    let verdict = check_conjecture(&g, &res, 1e-5).unwrap();
    assert_eq!(verdict.group_order, 6);
    assert_eq!(verdict.orbit_count, 1);
    assert!(verdict.invariant);
}
