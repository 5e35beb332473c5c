//! Seeded generators for test populations and `selftest`.

use rand::Rng;

use crate::gf2::Gf2Matrix;
use crate::graph::{Label, LabeledGraph, LoopedGraph, Sign};
use crate::invariants::is_graph_knot;

pub fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn random_label<R: Rng + ?Sized>(rng: &mut R) -> Label {
    Label::new(rng.gen(), random_sign(rng))
}

fn random_edges<R: Rng + ?Sized, L: crate::VertexLabel>(rng: &mut R, g: &mut crate::Graph<L>, p: f64) {
    let n = g.len();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.set_edge(i, j, true);
            }
        }
    }
}

/// Erdős–Rényi graph with uniformly random framings and signs.
pub fn random_labeled_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> LabeledGraph {
    let labels: Vec<Label> = (0..n).map(|_| random_label(rng)).collect();
    let mut g = LabeledGraph::from_labels(&labels);
    random_edges(rng, &mut g, p);
    g
}

pub fn random_looped_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> LoopedGraph {
    let loops: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut g = LoopedGraph::from_labels(&loops);
    random_edges(rng, &mut g, p);
    g
}

/// Rejection-samples a labeled graph with `det(A+E) = 1`.
pub fn random_graph_knot<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> LabeledGraph {
    loop {
        let g = random_labeled_graph(rng, n, p);
        if is_graph_knot(&g) {
            return g;
        }
    }
}

pub fn random_symmetric_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            if rng.gen() {
                m.set(i, j, true);
                m.set(j, i, true);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic_and_well_formed() {
        let mut a = ChaCha8Rng::seed_from_u64(1);
        let mut b = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_labeled_graph(&mut a, 7, 0.5), random_labeled_graph(&mut b, 7, 0.5));
        let k = random_graph_knot(&mut a, 6, 0.5);
        assert!(is_graph_knot(&k));
        let m = random_symmetric_matrix(&mut a, 9);
        assert!(m.is_symmetric());
    }
}
