use graphlink::correspondence::chi;
use graphlink::moves::{apply_graph_move, apply_loop_move, list_graph_moves, list_loop_moves, Family, Move};
use graphlink::random::{random_graph_knot, random_labeled_graph, random_looped_graph};
use graphlink::search::{invariant_distinguish, prove_equivalent, replay, Outcome, SearchBounds};
use graphlink::{Label, LabeledGraph, LoopedGraph, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scramble_labeled(g: &LabeledGraph, families: &[Family], rng: &mut ChaCha8Rng, steps: usize) -> LabeledGraph {
    let mut h = g.clone();
    for k in 0..steps {
        let mut ms = list_graph_moves(&h, families);
        let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
        if families.contains(&Family::Og1) {
            ms.push(Move::Og1Add { v: format!("s{k}"), label: Label::new(false, sign) });
        }
        if families.contains(&Family::Og2) {
            let adjacent = rng.gen();
            let nbrs = (0..h.len()).filter(|_| rng.gen()).map(|i| h.name(i).to_string()).collect();
            ms.push(Move::Og2Add {
                a: format!("s{k}a"),
                la: Label::new(adjacent, sign),
                b: format!("s{k}b"),
                lb: Label::new(adjacent, -sign),
                adjacent,
                nbrs,
            });
        }
        if ms.is_empty() {
            break;
        }
        h = apply_graph_move(&h, &ms[rng.gen_range(0..ms.len())]).unwrap();
    }
    h
}

fn scramble_looped(l: &LoopedGraph, rng: &mut ChaCha8Rng, steps: usize) -> LoopedGraph {
    let mut h = l.clone();
    for k in 0..steps {
        let mut ms = list_loop_moves(&h, &Family::LOOP);
        ms.push(Move::O1Add { v: format!("s{k}"), looped: rng.gen() });
        let nbrs = (0..h.len()).filter(|_| rng.gen()).map(|i| h.name(i).to_string()).collect();
        ms.push(Move::O2Add { a: format!("s{k}a"), b: format!("s{k}b"), adjacent: rng.gen(), nbrs });
        h = apply_loop_move(&h, &ms[rng.gen_range(0..ms.len())]).unwrap();
    }
    h
}

/// Families under which the optional invariants come into play.
const FAMILY_SETS: [&[Family]; 4] = [
    &Family::GRAPH,
    &[Family::Og2, Family::Og3, Family::Og4, Family::Og4Prime],
    &[Family::Og4, Family::Og4Prime],
    &[Family::Og3, Family::Og4],
];

#[test]
fn invariants_never_separate_move_related_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for families in FAMILY_SETS {
        for _ in 0..2000 {
            let n = rng.gen_range(1..=8);
            let g = if rng.gen() { random_graph_knot(&mut rng, n, 0.5) } else { random_labeled_graph(&mut rng, n, 0.5) };
            let steps = rng.gen_range(1..=4);
            let h = scramble_labeled(&g, families, &mut rng, steps);
            assert_eq!(invariant_distinguish(&g, &h, families), None, "{families:?}: {g:?} vs {h:?}");
        }
    }
}

#[test]
fn search_after_scrambling_is_never_distinguished() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let bounds = SearchBounds { max_depth: 6, max_states: 5_000, max_vertices: None };
    let mut certificates = 0;
    for families in FAMILY_SETS {
        for _ in 0..60 {
            let n = rng.gen_range(1..=4);
            let g = random_graph_knot(&mut rng, n, 0.5);
            let steps = rng.gen_range(1..=4);
            let h = scramble_labeled(&g, families, &mut rng, steps);
            let r = prove_equivalent(&g, &h, families, bounds).unwrap();
            match &r.outcome {
                Outcome::Distinguished { reason } => panic!("{reason}: {g:?} vs {h:?}"),
                Outcome::Certificate(c) => {
                    assert!(replay(&g, &h, &c.steps).unwrap());
                    assert!(c.steps.len() <= bounds.max_depth);
                    certificates += 1;
                }
                Outcome::Inconclusive => {}
            }
        }
    }
    for _ in 0..80 {
        let n = rng.gen_range(1..=4);
        let l = random_looped_graph(&mut rng, n, 0.5);
        let steps = rng.gen_range(1..=3);
        let h = scramble_looped(&l, &mut rng, steps);
        let r = prove_equivalent(&l, &h, &Family::LOOP, bounds).unwrap();
        match &r.outcome {
            Outcome::Distinguished { reason } => panic!("{reason}: {l:?} vs {h:?}"),
            Outcome::Certificate(c) => {
                assert!(replay(&l, &h, &c.steps).unwrap());
                certificates += 1;
            }
            Outcome::Inconclusive => {}
        }
    }
    assert!(certificates > 100, "{certificates}");
}

#[test]
fn chi_images_of_move_related_knots_stay_related() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let bounds = SearchBounds { max_depth: 8, max_states: 50_000, max_vertices: None };
    let mut found = 0;
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let g = random_graph_knot(&mut rng, n, 0.5);
        let h = scramble_labeled(&g, &[Family::Og1, Family::Og2], &mut rng, 1);
        let (lg, lh) = (chi(&g).unwrap(), chi(&h).unwrap());
        let r = prove_equivalent(&lg, &lh, &Family::LOOP, bounds).unwrap();
        if let Outcome::Certificate(c) = &r.outcome {
            assert!(replay(&lg, &lh, &c.steps).unwrap());
            found += 1;
        } else {
            panic!("{:?} for chi images of {g:?} and {h:?}", r.outcome);
        }
    }
    assert_eq!(found, 60);
}

#[test]
fn search_is_deterministic_across_runs() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let bounds = SearchBounds::default();
    for _ in 0..10 {
        let g = random_graph_knot(&mut rng, 3, 0.5);
        let h = scramble_labeled(&g, &Family::GRAPH, &mut rng, 2);
        let a = prove_equivalent(&g, &h, &Family::GRAPH, bounds).unwrap();
        let b = prove_equivalent(&g, &h, &Family::GRAPH, bounds).unwrap();
        assert_eq!(serde_json::to_string(&a.outcome).unwrap(), serde_json::to_string(&b.outcome).unwrap());
    }
}
