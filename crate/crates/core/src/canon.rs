//! Canonical keys for small labeled/looped graphs.
//!
//! The key of a graph is the lexicographically smallest
//! `(label vector, adjacency bit-string)` over the vertex orderings produced
//! by individualisation-refinement. The set of orderings explored is closed
//! under isomorphism, so equal keys mean isomorphic graphs and vice versa.
//! Adjacency bits are listed column by column (`(0,1), (0,2), (1,2), (0,3), ...`)
//! so that a fixed ordering prefix fixes a key prefix, which is what the
//! branch-and-bound prunes on.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexLabel};

pub const DEFAULT_CANON_BOUND: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_form<L: VertexLabel>(g: &Graph<L>) -> Result<CanonicalKey> {
    canonical_form_bounded(g, DEFAULT_CANON_BOUND)
}

pub fn canonical_form_bounded<L: VertexLabel>(g: &Graph<L>, bound: usize) -> Result<CanonicalKey> {
    canonical_labeling(g, bound).map(|(k, _)| k)
}

/// Canonical key together with the ordering realising it: position `k` of
/// the canonical form holds vertex `order[k]`.
pub fn canonical_labeling<L: VertexLabel>(g: &Graph<L>, bound: usize) -> Result<(CanonicalKey, Vec<usize>)> {
    let n = g.len();
    if n > bound || n > 255 {
        return Err(Error::TooLarge { n, bound: bound.min(255) });
    }
    let search = Search::new(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_code: Vec<(u8, usize)> = (0..n).map(|v| (g.label(v).code(), v)).collect();
    by_code.sort_unstable();
    for (code, v) in by_code {
        match cells.last_mut() {
            Some(cell) if g.label(cell[0]).code() == code => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    search.descend(search.refine(cells), &mut best);
    let (bits, order) = best.unwrap_or_default();

    let mut key = Vec::with_capacity(1 + n + bits.len() / 8 + 1);
    key.push(n as u8);
    key.extend(order.iter().map(|&v| g.label(v).code()));
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 0x80 >> k;
            }
        }
        key.push(byte);
    }
    Ok((CanonicalKey(key), order))
}

struct Search<'a, L> {
    g: &'a Graph<L>,
}

impl<'a, L: VertexLabel> Search<'a, L> {
    fn new(g: &'a Graph<L>) -> Self {
        Self { g }
    }

    /// Splits cells by neighbour counts into every cell until stable.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.g.len();
        loop {
            let mut cell_of = vec![0usize; n];
            for (c, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            let mut changed = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut sig: Vec<(Vec<u16>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut counts = vec![0u16; cells.len()];
                        for u in self.g.neighbors(v) {
                            counts[cell_of[u]] += 1;
                        }
                        (counts, v)
                    })
                    .collect();
                sig.sort();
                let before = next.len();
                let mut start = 0;
                for k in 1..=sig.len() {
                    if k == sig.len() || sig[k].0 != sig[start].0 {
                        next.push(sig[start..k].iter().map(|&(_, v)| v).collect());
                        start = k;
                    }
                }
                changed |= next.len() - before > 1;
            }
            if !changed {
                return next;
            }
            cells = next;
        }
    }

    fn twins(&self, x: usize, y: usize) -> bool {
        let g = self.g;
        if g.label(x) != g.label(y) {
            return false;
        }
        (0..g.len()).filter(|&z| z != x && z != y).all(|z| g.adjacent(x, z) == g.adjacent(y, z))
    }

    fn prefix_bits(&self, order: &[usize]) -> Vec<bool> {
        let mut bits = Vec::with_capacity(order.len() * order.len().saturating_sub(1) / 2);
        for j in 0..order.len() {
            for i in 0..j {
                bits.push(self.g.adjacent(order[i], order[j]));
            }
        }
        bits
    }

    fn descend(&self, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<bool>, Vec<usize>)>) {
        let fixed: Vec<usize> = cells.iter().take_while(|c| c.len() == 1).map(|c| c[0]).collect();
        let prefix = self.prefix_bits(&fixed);
        if let Some((best_bits, _)) = best.as_ref() {
            if prefix.as_slice().cmp(&best_bits[..prefix.len()]) == Ordering::Greater {
                return;
            }
        }
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            if best.as_ref().is_none_or(|(b, _)| prefix < *b) {
                *best = Some((prefix, order));
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &x in &cells[target] {
            if tried.iter().any(|&t| self.twins(t, x)) {
                continue;
            }
            tried.push(x);
            let mut split = Vec::with_capacity(cells.len() + 1);
            split.extend_from_slice(&cells[..target]);
            split.push(vec![x]);
            split.push(cells[target].iter().copied().filter(|&v| v != x).collect());
            split.extend_from_slice(&cells[target + 1..]);
            self.descend(self.refine(split), best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Label, LabeledGraph, LoopedGraph, Sign};

    fn cycle(n: usize, order: &[usize]) -> LoopedGraph {
        let mut g = LoopedGraph::from_labels(&vec![false; n]);
        for k in 0..n {
            g.set_edge(order[k], order[(k + 1) % n], true);
        }
        g
    }

    #[test]
    fn four_cycle_relabelings_share_a_key() {
        let a = cycle(4, &[0, 1, 2, 3]);
        let b = cycle(4, &[0, 2, 1, 3]);
        let c = cycle(4, &[3, 1, 0, 2]);
        let ka = canonical_form(&a).unwrap();
        assert_eq!(ka, canonical_form(&b).unwrap());
        assert_eq!(ka, canonical_form(&c).unwrap());
    }

    #[test]
    fn k2_and_two_isolated_differ() {
        let mut k2 = LoopedGraph::from_labels(&[false, false]);
        k2.set_edge(0, 1, true);
        let e2 = LoopedGraph::from_labels(&[false, false]);
        assert_ne!(canonical_form(&k2).unwrap(), canonical_form(&e2).unwrap());
    }

    #[test]
    fn labels_and_loops_are_part_of_the_key() {
        let a = LoopedGraph::from_labels(&[true]);
        let b = LoopedGraph::from_labels(&[false]);
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let p = LabeledGraph::from_labels(&[Label::new(false, Sign::Plus)]);
        let m = LabeledGraph::from_labels(&[Label::new(false, Sign::Minus)]);
        assert_ne!(canonical_form(&p).unwrap(), canonical_form(&m).unwrap());
    }

    #[test]
    fn ordering_realises_the_key() {
        let g = cycle(5, &[0, 3, 1, 4, 2]);
        let (key, order) = canonical_labeling(&g, 12).unwrap();
        let h = g.reordered(&order);
        assert_eq!(canonical_form(&h).unwrap(), key);
        let (_, order_h) = canonical_labeling(&h, 12).unwrap();
        assert_eq!(h.reordered(&order_h).edges(), h.edges());
    }

    #[test]
    fn too_large_is_rejected() {
        let g = LoopedGraph::from_labels(&[false; 13]);
        assert!(matches!(canonical_form(&g), Err(Error::TooLarge { n: 13, bound: 12 })));
        assert!(canonical_form_bounded(&g, 13).is_ok());
    }

    #[test]
    fn symmetric_graphs_stay_fast() {
        // empty, complete and Petersen graphs have large automorphism groups
        let empty = LoopedGraph::from_labels(&[false; 12]);
        canonical_form(&empty).unwrap();
        let mut complete = empty.clone();
        for i in 0..12 {
            for j in i + 1..12 {
                complete.set_edge(i, j, true);
            }
        }
        canonical_form(&complete).unwrap();
        let mut petersen = LoopedGraph::from_labels(&[false; 10]);
        for i in 0..5 {
            petersen.set_edge(i, (i + 1) % 5, true);
            petersen.set_edge(i, i + 5, true);
            petersen.set_edge(5 + i, 5 + (i + 2) % 5, true);
        }
        let k1 = canonical_form(&petersen).unwrap();
        let shuffled = petersen.reordered(&[7, 2, 9, 0, 4, 1, 8, 3, 6, 5]);
        assert_eq!(k1, canonical_form(&shuffled).unwrap());
    }
}
