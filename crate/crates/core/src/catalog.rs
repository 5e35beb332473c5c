//! Named example graphs.

use crate::graph::{Graph, Label, LabeledGraph, LoopedGraph, VertexLabel};

fn wheel_with<L: VertexLabel>(k: usize, hub: L, rim: L) -> Graph<L> {
    assert!(k >= 3, "a wheel needs a rim of at least 3 vertices");
    let vertices = std::iter::once(("h".to_string(), hub)).chain((0..k).map(|i| (format!("r{i}"), rim)));
    let mut g = Graph::with_vertices(vertices).expect("generated names are valid");
    for i in 0..k {
        g.set_edge(0, 1 + i, true);
        g.set_edge(1 + i, 1 + (i + 1) % k, true);
    }
    g
}

/// Wheel `W_k`: hub `h` joined to every vertex of the cycle `r0 .. r{k-1}`.
/// `W5` and `W7` are not interlacement graphs of any chord diagram.
pub fn wheel(k: usize) -> LoopedGraph {
    wheel_with(k, false, false)
}

/// Wheel with every vertex carrying `label`.
pub fn labeled_wheel(k: usize, label: Label) -> LabeledGraph {
    wheel_with(k, label, label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    #[test]
    fn wheel_shape() {
        let w = wheel(5);
        assert_eq!(w.len(), 6);
        assert_eq!(w.edge_count(), 10);
        assert_eq!(w.degree(0), 5);
        assert!((1..6).all(|i| w.degree(i) == 3));
        let lw = labeled_wheel(7, Label::new(true, Sign::Plus));
        assert_eq!(lw.len(), 8);
        assert!(lw.labels().iter().all(|l| l.framing));
    }
}
