use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tightdec::absorb::{degree_adjuster, AdjusterParams};
use tightdec::graph::{complete, make_graph, minus, tight_cycle_graph, union};
use tightdec::randomized::*;
use tightdec::solver;
use tightdec::{Error, Vertex};

#[test]
fn link_stage_closes_through_u() {
    let mut h = complete(12, 3).unwrap();
    for e in [[20, 0, 1], [20, 1, 2], [20, 2, 3], [21, 4, 5], [21, 5, 6], [21, 6, 7], [21, 8, 9], [21, 9, 10], [21, 10, 11]] {
        h.insert_edge(&e).unwrap();
    }
    let u: BTreeSet<Vertex> = (0..12).collect();
    let mut params = CoverDownParams::defaults(3);
    params.alpha = 0.0;
    let r = cover_down(&h, &u, 7, &params, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    assert_eq!(r.cycles.len(), 3);
    assert_eq!(r.leftover.edge_count(), 220 - 12);
    assert!(r.leftover.edges().iter().all(|e| e.iter().all(|v| u.contains(v))));
    let covered = tightdec::graph::KGraph::from_edges(3, r.cycles.iter().flat_map(|c| c.edges())).unwrap();
    assert_eq!(union(&covered, &r.leftover, true).unwrap(), h);
}

#[test]
fn dense_cover_down_reports_its_stage() {
    // at n = 36 the reserve hierarchy is too shallow; the run must say where it stopped
    let h = complete(36, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let adj = degree_adjuster(&h, 7, &AdjusterParams::default(), &mut rng).unwrap();
    let rest = minus(&h, &adj.h_prime).unwrap();
    assert!(rest.vertex_degrees().values().all(|d| d % 3 == 0));
    let u: BTreeSet<Vertex> = (0..12).collect();
    match cover_down(&rest, &u, 7, &CoverDownParams::defaults(3), &mut rng) {
        Err(Error::CoverDownFailure { stage, reason }) => {
            assert!((1..=3).contains(&stage), "stage {stage}: {reason}");
        }
        Ok(r) => assert!(r.leftover.edges().iter().all(|e| e.iter().all(|v| u.contains(v)))),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn pipeline_solves_small_hosts_directly() {
    let h = tight_cycle_graph(7, 3).unwrap();
    let r = pipeline(&h, 7, &PipelineParams::defaults(3), &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    let cert = r.certificate.expect("a full decomposition");
    assert!(solver::verify(&h, &cert).ok());
    assert!(r.remaining.is_empty());
}

#[test]
fn pipeline_rejects_non_divisible() {
    let h = make_graph(3, 0..5, [[0, 1, 2], [1, 2, 3]]).unwrap();
    let r = pipeline(&h, 7, &PipelineParams::defaults(3), &mut ChaCha8Rng::seed_from_u64(1));
    assert!(matches!(r, Err(Error::NotDivisible(_))));
}

#[test]
fn vortex_levels_nest_and_check() {
    let h = complete(60, 3).unwrap();
    let v = sample_vortex(&h, 0.9, 0.5, 20, &mut ChaCha8Rng::seed_from_u64(4), DEFAULT_RETRIES).unwrap();
    assert_eq!(v.levels[0].len(), 60);
    assert!(v.levels.windows(2).all(|w| w[1].is_subset(&w[0]) && w[1].len() < w[0].len()));
    assert!(v.levels.last().unwrap().len() <= 20);
    check_vortex(&h, &v).unwrap();
    let mut bad = v.clone();
    bad.levels[1].insert(1000);
    assert!(check_vortex(&h, &bad).is_err());
}

#[test]
fn packing_is_edge_disjoint() {
    let h = complete(14, 3).unwrap();
    let p = greedy_packing(&h, 7, 0.0, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let mut seen = BTreeSet::new();
    for c in &p.cycles {
        assert_eq!(c.edge_count(), 7);
        for e in c.edges() {
            assert!(h.contains_edge(&e));
            assert!(seen.insert(e));
        }
    }
    assert_eq!(seen.len() + p.leftover.edge_count(), h.edge_count());
}

#[test]
fn extension_respects_forbidden_edges() {
    let h = complete(20, 3).unwrap();
    let pairs = SparsePairList { n: 20, pairs: vec![(vec![0, 1], vec![2, 3]), (vec![4, 5], vec![6, 7])] };
    let forbidden = [vec![1, 0, 8], vec![0, 1, 9]].iter().map(|e| tightdec::graph::canonical(e)).collect();
    let rep = extend_all(&h, &pairs, &ExtendConfig::new(6, 0.5), &forbidden, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
    check_extension(&h, &pairs, &forbidden, &rep, 0.5).unwrap();
    assert!(rep.trails.iter().flat_map(|t| t.edges()).all(|e| !forbidden.contains(&e)));
}
