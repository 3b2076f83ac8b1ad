mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use sgh::cycles::simple_cycles;
use sgh::distance::{lift_certificate, Certificate};
use sgh::edc::{edc, edc_weighted};
use sgh::io::{signed_graph_from_json, signed_graph_to_json, weighted_graph_from_json, weighted_graph_to_json};
use sgh::signed::{switch, switching_equivalent, walk_girths};
use sgh::tube::{build_twisted_tube, tube_distance, verify_tube_certificate, TubeShape};
use sgh::weighted::{weighted_walk_girths, WeightedSignedGraph};
use sgh::{Sign, SignedGraph, Switching};

fn graph(seed: u64, n: usize, extra: usize) -> SignedGraph {
    random_signed_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, extra, true)
}

fn negative_cycle_sets(g: &SignedGraph) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = simple_cycles(g, g.n().max(2))
        .into_iter()
        .filter(|c| c.sign == Sign::Negative)
        .map(|c| {
            let mut e = c.edges.clone();
            e.sort_unstable();
            e
        })
        .collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn switching_is_an_involution(seed in any::<u64>(), n in 2usize..9, extra in 0usize..8, bits in any::<u16>()) {
        let g = graph(seed, n, extra);
        let x = Switching::new((0..n).filter(|v| bits >> v & 1 == 1));
        let once = switch(&g, &x).unwrap();
        prop_assert_eq!(switch(&once, &x).unwrap(), g.clone());
        prop_assert_eq!(walk_girths(&once).unwrap(), walk_girths(&g).unwrap());
        prop_assert!(switching_equivalent(&g, &once).unwrap().is_some());
    }

    #[test]
    fn walk_girths_match_the_frontier_oracle(seed in any::<u64>(), n in 2usize..9, extra in 0usize..8) {
        let g = graph(seed, n, extra);
        prop_assert_eq!(walk_girths(&g).unwrap(), girths_by_frontier(&g));
    }

    #[test]
    fn equivalence_matches_negative_cycle_sets(seed in any::<u64>(), n in 2usize..7, extra in 0usize..5, flips in any::<u32>()) {
        let g = graph(seed, n, extra);
        // Parallel edges may swap ids when resigned, so compare on simple graphs with loops.
        let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.len() != g.edge_count() {
            return Ok(());
        }
        // Same multigraph, some edges resigned.
        let other = SignedGraph::new(
            n,
            g.edges().iter().enumerate().map(|(i, e)| {
                let s = if flips >> (i % 32) & 1 == 1 { e.sign.flip() } else { e.sign };
                (e.u, e.v, s)
            }),
        ).unwrap();
        if other.edge_count() != g.edge_count() {
            return Ok(());
        }
        let same_cycles = negative_cycle_sets(&g) == negative_cycle_sets(&other);
        prop_assert_eq!(switching_equivalent(&g, &other).unwrap().is_some(), same_cycles);
    }

    #[test]
    fn edc_identities(seed in any::<u64>(), n in 2usize..9, extra in 0usize..8) {
        let g = graph(seed, n, extra);
        let (b, c) = (walk_girths(&g).unwrap(), walk_girths(&edc(&g)).unwrap());
        prop_assert_eq!(c.g01, b.g01);
        prop_assert_eq!(c.g10, b.g11 + 1);
        prop_assert_eq!(c.g11, b.g10 + 1);
    }

    #[test]
    fn weighted_edc_identities(seed in any::<u64>(), n in 2usize..7, extra in 0usize..5, ws in proptest::collection::vec(1i64..4, 16)) {
        let s = graph(seed, n, extra);
        let w = WeightedSignedGraph::new(
            n,
            s.edges().iter().enumerate().map(|(i, e)| {
                let x = ws[i % ws.len()];
                (e.u, e.v, if e.sign == Sign::Negative { -x } else { x })
            }),
        ).unwrap();
        let (b, c) = (weighted_walk_girths(&w).unwrap(), weighted_walk_girths(&edc_weighted(&w)).unwrap());
        prop_assert_eq!(c.g01, b.g01);
        prop_assert_eq!(c.g10, b.g11 + 1);
        prop_assert_eq!(c.g11, b.g10 + 1);
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>(), n in 2usize..9, extra in 0usize..8) {
        let g = graph(seed, n, extra);
        prop_assert_eq!(signed_graph_from_json(&signed_graph_to_json(&g)).unwrap(), g.clone());
        let w = WeightedSignedGraph::from_signed(&g);
        prop_assert_eq!(weighted_graph_from_json(&weighted_graph_to_json(&w)).unwrap(), w);
    }

    #[test]
    fn tube_distance_matches_bfs(g in 2u64..12, u in 0usize..64, v in 0usize..64) {
        let shape = TubeShape::new(g).unwrap();
        let tt = build_twisted_tube(g).unwrap();
        let (u, v) = (u % tt.n(), v % tt.n());
        let d = tube_distance(&shape, shape.coord(u), shape.coord(v)).unwrap().d;
        prop_assert_eq!(Some(d), bfs(&sgh::tube::build_cylinder(g).unwrap(), u)[v]);
        if u != v {
            prop_assert_eq!(f_g(algebraic_distance_oracle(&tt, u)[v].unwrap(), g), d);
        }
    }
}

#[test]
fn lifted_weights_are_transformed_cover_distances() {
    for c in [Certificate::negative_loop_seed(), Certificate::digon_seed(), verify_tube_certificate(4).unwrap().0] {
        let lifted = lift_certificate(&c).unwrap();
        for e in lifted.dist_graph.edges() {
            let ad = algebraic_distance_oracle(&lifted.base, e.u)[e.v].unwrap();
            assert_eq!(e.w as u64, f_g(ad, lifted.g), "edge {}-{} at g={}", e.u, e.v, lifted.g);
        }
    }
}
