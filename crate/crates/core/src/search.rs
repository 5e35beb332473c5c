//! Bounded bidirectional breadth-first search for move sequences between
//! two graphs.
//!
//! States are deduplicated by canonical key. Each side remembers, per key,
//! the first graph reaching it and the move that produced it, so a path is
//! an exact replayable sequence. When the two sides meet at isomorphic
//! graphs, the second half is reversed, its vertex names are carried over
//! through the isomorphism, and the whole sequence is replayed as a check.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::canon::{canonical_form, canonical_form_bounded, CanonicalKey, DEFAULT_CANON_BOUND};
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, Graph, Label, LabeledGraph, LoopedGraph, Sign, VertexLabel};
use crate::invariants::{component_count, is_graph_knot, writhe};
use crate::moves::{
    apply_graph_move, apply_loop_move, inverse_graph_move, inverse_loop_move, list_graph_moves, list_loop_moves,
    Family, Move,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_depth: usize,
    pub max_states: usize,
    /// Largest graph additions may create; `None` means two more than the
    /// larger input.
    pub max_vertices: Option<usize>,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self { max_depth: 8, max_states: 100_000, max_vertices: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveCertificate {
    pub start_key: CanonicalKey,
    pub end_key: CanonicalKey,
    pub steps: Vec<Move>,
}

impl Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.to_hex())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Certificate(MoveCertificate),
    Distinguished { reason: String },
    Inconclusive,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub states: usize,
    pub depth_reached: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

/// A graph kind with a move system the search can drive.
pub trait MoveSystem: VertexLabel {
    /// Removals and in-place moves.
    fn listed(g: &Graph<Self>, families: &[Family]) -> Vec<Move>;
    /// Vertex additions using the two fresh names given.
    fn additions(g: &Graph<Self>, families: &[Family], fresh: [&str; 2], room: usize) -> Vec<Move>;
    fn apply(g: &Graph<Self>, m: &Move) -> Result<Graph<Self>>;
    fn inverse(before: &Graph<Self>, m: &Move) -> Result<Move>;
    fn distinguish(g1: &Graph<Self>, g2: &Graph<Self>, families: &[Family]) -> Option<String>;
}

fn subsets(g: &Graph<impl VertexLabel>) -> impl Iterator<Item = Vec<String>> + '_ {
    let n = g.len();
    (0u64..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| g.name(i).to_string()).collect())
}

impl MoveSystem for Label {
    fn listed(g: &LabeledGraph, families: &[Family]) -> Vec<Move> {
        list_graph_moves(g, families)
    }

    fn additions(g: &LabeledGraph, families: &[Family], fresh: [&str; 2], room: usize) -> Vec<Move> {
        let mut out = Vec::new();
        if families.contains(&Family::Og1) && room >= 1 {
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(Move::Og1Add { v: fresh[0].into(), label: Label::new(false, sign) });
            }
        }
        if families.contains(&Family::Og2) && room >= 2 {
            for nbrs in subsets(g) {
                for adjacent in [false, true] {
                    out.push(Move::Og2Add {
                        a: fresh[0].into(),
                        la: Label::new(adjacent, Sign::Plus),
                        b: fresh[1].into(),
                        lb: Label::new(adjacent, Sign::Minus),
                        adjacent,
                        nbrs: nbrs.clone(),
                    });
                }
            }
        }
        out
    }

    fn apply(g: &LabeledGraph, m: &Move) -> Result<LabeledGraph> {
        apply_graph_move(g, m)
    }

    fn inverse(before: &LabeledGraph, m: &Move) -> Result<Move> {
        inverse_graph_move(before, m)
    }

    fn distinguish(g1: &LabeledGraph, g2: &LabeledGraph, families: &[Family]) -> Option<String> {
        invariant_distinguish(g1, g2, families)
    }
}

impl MoveSystem for bool {
    fn listed(l: &LoopedGraph, families: &[Family]) -> Vec<Move> {
        list_loop_moves(l, families)
    }

    fn additions(l: &LoopedGraph, families: &[Family], fresh: [&str; 2], room: usize) -> Vec<Move> {
        let mut out = Vec::new();
        if families.contains(&Family::O1) && room >= 1 {
            for looped in [true, false] {
                out.push(Move::O1Add { v: fresh[0].into(), looped });
            }
        }
        if families.contains(&Family::O2) && room >= 2 {
            for nbrs in subsets(l) {
                for adjacent in [false, true] {
                    out.push(Move::O2Add { a: fresh[0].into(), b: fresh[1].into(), adjacent, nbrs: nbrs.clone() });
                }
            }
        }
        out
    }

    fn apply(l: &LoopedGraph, m: &Move) -> Result<LoopedGraph> {
        apply_loop_move(l, m)
    }

    fn inverse(before: &LoopedGraph, m: &Move) -> Result<Move> {
        inverse_loop_move(before, m)
    }

    fn distinguish(l1: &LoopedGraph, l2: &LoopedGraph, families: &[Family]) -> Option<String> {
        if !families.contains(&Family::O1) {
            let balance = |l: &LoopedGraph| (0..l.len()).map(|i| if l.is_looped(i) { -1i64 } else { 1 }).sum::<i64>();
            let (b1, b2) = (balance(l1), balance(l2));
            if b1 != b2 {
                return Some(format!("unlooped minus looped vertex count ({b1} vs {b2})"));
            }
        }
        None
    }
}

/// First implemented invariant telling the two labeled graphs apart under
/// the given move families.
pub fn invariant_distinguish(g1: &LabeledGraph, g2: &LabeledGraph, families: &[Family]) -> Option<String> {
    let (c1, c2) = (component_count(g1), component_count(g2));
    if c1 != c2 {
        return Some(format!("component count ({c1} vs {c2})"));
    }
    if !is_graph_knot(g1) {
        return None;
    }
    let (w1, w2) = (writhe(g1).ok()?, writhe(g2).ok()?);
    if !families.contains(&Family::Og1) && w1.total != w2.total {
        return Some(format!("total writhe ({} vs {})", w1.total, w2.total));
    }
    if families.iter().all(|f| matches!(f, Family::Og4 | Family::Og4Prime)) {
        let (mut m1, mut m2) = (w1.per_vertex, w2.per_vertex);
        m1.sort_unstable();
        m2.sort_unstable();
        if m1 != m2 {
            return Some(format!("writhe multiset ({m1:?} vs {m2:?})"));
        }
    }
    None
}

struct Node<L> {
    graph: Graph<L>,
    parent: Option<(CanonicalKey, Move)>,
}

struct Side<L> {
    nodes: HashMap<CanonicalKey, Node<L>>,
    frontier: Vec<CanonicalKey>,
    depth: usize,
}

impl<L: MoveSystem> Side<L> {
    fn new(g: &Graph<L>, key: CanonicalKey) -> Self {
        let mut nodes = HashMap::new();
        nodes.insert(key.clone(), Node { graph: g.clone(), parent: None });
        Self { nodes, frontier: vec![key], depth: 0 }
    }

    /// Moves from the root to `key`, replayable on the root graph.
    fn path_to(&self, key: &CanonicalKey) -> Vec<Move> {
        let mut steps = Vec::new();
        let mut cur = key;
        while let Some((parent, m)) = &self.nodes[cur].parent {
            steps.push(m.clone());
            cur = parent;
        }
        steps.reverse();
        steps
    }

    /// Graphs along the path from the root to `key`, root first.
    fn graphs_to(&self, key: &CanonicalKey) -> Vec<&Graph<L>> {
        let mut out = vec![&self.nodes[key].graph];
        let mut cur = key;
        while let Some((parent, _)) = &self.nodes[cur].parent {
            out.push(&self.nodes[parent].graph);
            cur = parent;
        }
        out.reverse();
        out
    }
}

fn fresh_names<L: VertexLabel>(g: &Graph<L>) -> [String; 2] {
    let mut out = Vec::with_capacity(2);
    let mut k = 0;
    while out.len() < 2 {
        let name = format!("t{k}");
        if g.index_of(&name).is_err() {
            out.push(name);
        }
        k += 1;
    }
    [out[0].clone(), out[1].clone()]
}

/// Bounded search for a sequence of moves from `g1` to a graph isomorphic
/// to `g2`.
pub fn prove_equivalent<L: MoveSystem>(
    g1: &Graph<L>,
    g2: &Graph<L>,
    families: &[Family],
    bounds: SearchBounds,
) -> Result<SearchResult> {
    let max_vertices = bounds.max_vertices.unwrap_or(g1.len().max(g2.len()) + 2);
    for g in [g1, g2] {
        if g.len() > max_vertices {
            return Err(Error::TooLarge { n: g.len(), bound: max_vertices });
        }
    }
    if max_vertices > DEFAULT_CANON_BOUND {
        return Err(Error::TooLarge { n: max_vertices, bound: DEFAULT_CANON_BOUND });
    }
    if let Some(reason) = L::distinguish(g1, g2, families) {
        return Ok(SearchResult { outcome: Outcome::Distinguished { reason }, stats: SearchStats::default() });
    }
    let (k1, k2) = (canonical_form(g1)?, canonical_form(g2)?);
    let mut a = Side::new(g1, k1.clone());
    let mut b = Side::new(g2, k2.clone());
    let mut stats = SearchStats { states: 2, depth_reached: 0 };
    if k1 == k2 {
        let cert = stitch(&a, &b, &k1, g1, g2)?;
        return Ok(SearchResult { outcome: Outcome::Certificate(cert), stats: SearchStats { states: 1, ..stats } });
    }

    while a.depth + b.depth < bounds.max_depth {
        // grow the side with the smaller frontier
        let grow_a = a.frontier.len() <= b.frontier.len();
        let (this, other) = if grow_a { (&mut a, &b) } else { (&mut b, &a) };
        if this.frontier.is_empty() {
            break;
        }
        let frontier = std::mem::take(&mut this.frontier);
        let mut next = Vec::new();
        let mut meeting = None;
        'expand: for key in &frontier {
            let g = this.nodes[key].graph.clone();
            let names = fresh_names(&g);
            let room = max_vertices.saturating_sub(g.len());
            let mut moves = L::listed(&g, families);
            moves.extend(L::additions(&g, families, [&names[0], &names[1]], room));
            for m in moves {
                let h = L::apply(&g, &m)?;
                let hk = canonical_form_bounded(&h, DEFAULT_CANON_BOUND)?;
                if this.nodes.contains_key(&hk) {
                    continue;
                }
                this.nodes.insert(hk.clone(), Node { graph: h, parent: Some((key.clone(), m)) });
                stats.states += 1;
                if other.nodes.contains_key(&hk) {
                    meeting = Some(hk);
                    break 'expand;
                }
                next.push(hk);
                if stats.states >= bounds.max_states {
                    break 'expand;
                }
            }
        }
        this.frontier = next;
        this.depth += 1;
        stats.depth_reached = a.depth + b.depth;
        if let Some(meet) = meeting {
            let cert = stitch(&a, &b, &meet, g1, g2)?;
            return Ok(SearchResult { outcome: Outcome::Certificate(cert), stats });
        }
        if stats.states >= bounds.max_states {
            break;
        }
    }
    Ok(SearchResult { outcome: Outcome::Inconclusive, stats })
}

/// Joins the path `g1 -> meet` with the reversed path `meet -> g2`.
fn stitch<L: MoveSystem>(
    a: &Side<L>,
    b: &Side<L>,
    meet: &CanonicalKey,
    g1: &Graph<L>,
    g2: &Graph<L>,
) -> Result<MoveCertificate> {
    let mut steps = a.path_to(meet);
    let ra = &a.nodes[meet].graph;
    let b_graphs = b.graphs_to(meet);
    let b_steps = b.path_to(meet);
    let rb = *b_graphs.last().expect("path contains its endpoint");
    let iso = are_isomorphic(ra, rb, true)
        .ok_or_else(|| Error::InternalContradiction("equal canonical keys but no isomorphism".into()))?;

    // Names of the second half are carried over to the first half's graph.
    let mut rename: HashMap<String, String> = HashMap::new();
    for (i, &j) in iso.iter().enumerate() {
        rename.insert(rb.name(j).to_string(), ra.name(i).to_string());
    }
    let mut taken: HashSet<String> = ra.names().iter().cloned().collect();
    for g in a.graphs_to(meet).into_iter().chain(b_graphs.iter().copied()) {
        taken.extend(g.names().iter().cloned());
    }
    let mut counter = 0;
    for g in &b_graphs {
        for name in g.names() {
            if !rename.contains_key(name) {
                let fresh = loop {
                    let cand = format!("z{counter}");
                    counter += 1;
                    if !taken.contains(&cand) {
                        break cand;
                    }
                };
                rename.insert(name.clone(), fresh);
            }
        }
    }
    for k in (0..b_steps.len()).rev() {
        let inv = L::inverse(b_graphs[k], &b_steps[k])?;
        steps.push(inv.rename(|n| rename.get(n).cloned().unwrap_or_else(|| n.to_string())));
    }

    let mut cur = g1.clone();
    for m in &steps {
        cur = L::apply(&cur, m)?;
    }
    let end_key = canonical_form(&cur)?;
    if end_key != canonical_form(g2)? {
        return Err(Error::InternalContradiction("stitched certificate does not reach the target".into()));
    }
    Ok(MoveCertificate { start_key: canonical_form(g1)?, end_key, steps })
}

/// Replays a certificate and reports whether it ends at a graph isomorphic to `g2`.
pub fn replay<L: MoveSystem>(g1: &Graph<L>, g2: &Graph<L>, steps: &[Move]) -> Result<bool> {
    let mut cur = g1.clone();
    for m in steps {
        cur = L::apply(&cur, m)?;
    }
    Ok(canonical_form(&cur)? == canonical_form(g2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_graph_knot, random_looped_graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cert(r: &SearchResult) -> &MoveCertificate {
        match &r.outcome {
            Outcome::Certificate(c) => c,
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn removing_an_isolated_vertex() {
        let g = LabeledGraph::from_labels(&[Label::new(false, Sign::Plus)]);
        let r = prove_equivalent(&g, &LabeledGraph::new(), &Family::GRAPH, SearchBounds::default()).unwrap();
        let c = cert(&r);
        assert_eq!(c.steps, vec![Move::Og1Remove { v: "v0".into() }]);

        let l = LoopedGraph::from_labels(&[true]);
        let r = prove_equivalent(&l, &LoopedGraph::new(), &Family::LOOP, SearchBounds::default()).unwrap();
        assert_eq!(cert(&r).steps, vec![Move::O1Remove { v: "v0".into() }]);
    }

    #[test]
    fn framing_changes_the_component_count() {
        let a = LabeledGraph::from_labels(&[Label::new(false, Sign::Plus)]);
        let b = LabeledGraph::from_labels(&[Label::new(true, Sign::Plus)]);
        let r = prove_equivalent(&a, &b, &Family::GRAPH, SearchBounds::default()).unwrap();
        assert!(matches!(r.outcome, Outcome::Distinguished { ref reason } if reason.starts_with("component count")));
    }

    #[test]
    fn invariant_distinguish_examples() {
        let one = LabeledGraph::from_labels(&[Label::new(false, Sign::Plus)]);
        let two = LabeledGraph::from_labels(&[Label::new(true, Sign::Plus)]);
        assert!(invariant_distinguish(&one, &two, &Family::GRAPH).unwrap().starts_with("component count"));
        assert_eq!(invariant_distinguish(&one, &one, &Family::GRAPH), None);

        let mut p = LabeledGraph::from_labels(&[Label::new(false, Sign::Minus), Label::new(false, Sign::Plus), Label::new(false, Sign::Plus)]);
        p.set_edge(0, 1, true);
        p.set_edge(1, 2, true);
        let h = apply_graph_move(&p, &Move::Og4 { u: "v0".into(), v: "v1".into() }).unwrap();
        assert_eq!(invariant_distinguish(&p, &h, &[Family::Og4, Family::Og4Prime]), None);
        let plus = LabeledGraph::from_labels(&[Label::new(false, Sign::Plus)]);
        let minus = LabeledGraph::from_labels(&[Label::new(false, Sign::Minus)]);
        assert!(invariant_distinguish(&plus, &minus, &[Family::Og2, Family::Og3]).unwrap().starts_with("total writhe"));
        assert_eq!(invariant_distinguish(&plus, &minus, &Family::GRAPH), None);
    }

    #[test]
    fn certificates_replay_after_random_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let bounds = SearchBounds { max_depth: 6, max_states: 20_000, max_vertices: None };
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let g = random_graph_knot(&mut rng, n, 0.5);
            let mut h = g.clone();
            for _ in 0..rng.gen_range(1..=2) {
                let ms = list_graph_moves(&h, &Family::GRAPH);
                if ms.is_empty() {
                    break;
                }
                h = apply_graph_move(&h, &ms[rng.gen_range(0..ms.len())]).unwrap();
            }
            let r = prove_equivalent(&g, &h, &Family::GRAPH, bounds).unwrap();
            assert!(!matches!(r.outcome, Outcome::Distinguished { .. }));
            if let Outcome::Certificate(c) = &r.outcome {
                assert!(replay(&g, &h, &c.steps).unwrap());
            }
        }
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let l = random_looped_graph(&mut rng, n, 0.5);
            let mut h = l.clone();
            let ms = list_loop_moves(&h, &Family::LOOP);
            if !ms.is_empty() {
                h = apply_loop_move(&h, &ms[rng.gen_range(0..ms.len())]).unwrap();
            }
            let r = prove_equivalent(&l, &h, &Family::LOOP, bounds).unwrap();
            assert!(replay(&l, &h, &cert(&r).steps).unwrap());
        }
    }

    #[test]
    fn search_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let g = random_graph_knot(&mut rng, 4, 0.5);
        let h = random_graph_knot(&mut rng, 4, 0.5);
        let bounds = SearchBounds { max_depth: 4, max_states: 5_000, max_vertices: None };
        let r1 = prove_equivalent(&g, &h, &Family::GRAPH, bounds).unwrap();
        let r2 = prove_equivalent(&g, &h, &Family::GRAPH, bounds).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn oversized_inputs_are_rejected() {
        let g = LoopedGraph::from_labels(&[false; 11]);
        assert!(matches!(
            prove_equivalent(&g, &g, &Family::LOOP, SearchBounds::default()),
            Err(Error::TooLarge { .. })
        ));
    }
}
