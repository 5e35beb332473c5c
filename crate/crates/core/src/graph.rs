//! Labeled and looped simple graphs, local complementation and pivot.
//!
//! Vertices are identified by position; names exist for I/O and for move
//! descriptors. The adjacency relation is stored as a symmetric
//! [`Gf2Matrix`] with zero diagonal, so row `i` of the matrix is the
//! neighbourhood of vertex `i`.

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i32(x: i32) -> Option<Self> {
        match x {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_symbol(c: &str) -> Option<Self> {
        match c {
            "+" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Vertex label `(a, α)` of a graph-link representative: framing bit and sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub framing: bool,
    pub sign: Sign,
}

impl Label {
    pub const fn new(framing: bool, sign: Sign) -> Self {
        Self { framing, sign }
    }
}

impl Default for Label {
    fn default() -> Self {
        Label::new(false, Sign::Plus)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.framing as u8, self.sign.symbol())
    }
}

/// Per-vertex data carried by a [`Graph`].
pub trait VertexLabel: Clone + Copy + fmt::Debug + PartialEq + Eq + Hash {
    /// Diagonal entry of the adjacency matrix.
    fn diagonal_bit(&self) -> bool;
    /// Small integer used by canonical forms; distinct labels give distinct codes.
    fn code(&self) -> u8;
    /// Label given to the chord realising this vertex.
    fn chord_label(&self) -> Label;
}

impl VertexLabel for Label {
    fn diagonal_bit(&self) -> bool {
        self.framing
    }
    fn code(&self) -> u8 {
        (self.framing as u8) << 1 | (self.sign == Sign::Minus) as u8
    }
    fn chord_label(&self) -> Label {
        *self
    }
}

/// Loop flag of a looped-graph vertex.
impl VertexLabel for bool {
    fn diagonal_bit(&self) -> bool {
        *self
    }
    fn code(&self) -> u8 {
        *self as u8
    }
    fn chord_label(&self) -> Label {
        Label::default()
    }
}

/// Simple graph with ordered, named, labeled vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph<L> {
    names: Vec<String>,
    labels: Vec<L>,
    adj: Gf2Matrix,
}

/// Graph-link representative: every vertex carries `(framing, sign)`.
pub type LabeledGraph = Graph<Label>;
/// Looped interlacement graph: every vertex carries a loop flag.
pub type LoopedGraph = Graph<bool>;

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| !c.is_whitespace() && !"#,:()=".contains(c))
}

impl<L: VertexLabel> Graph<L> {
    pub fn new() -> Self {
        Self { names: Vec::new(), labels: Vec::new(), adj: Gf2Matrix::zeros(0) }
    }

    /// Graph on the given vertices with no edges.
    pub fn with_vertices<S: Into<String>>(vertices: impl IntoIterator<Item = (S, L)>) -> Result<Self> {
        let mut g = Self::new();
        let mut names = Vec::new();
        let mut labels = Vec::new();
        for (name, label) in vertices {
            let name = name.into();
            if !valid_name(&name) {
                return Err(Error::BadName(name));
            }
            if names.contains(&name) {
                return Err(Error::DuplicateName(name));
            }
            names.push(name);
            labels.push(label);
        }
        g.adj = Gf2Matrix::zeros(names.len());
        g.names = names;
        g.labels = labels;
        Ok(g)
    }

    /// Graph with vertices named `v0, v1, ...`.
    pub fn from_labels(labels: &[L]) -> Self {
        Self::with_vertices(labels.iter().enumerate().map(|(i, &l)| (format!("v{i}"), l))).expect("generated names are valid")
    }

    /// Builds a graph from an adjacency relation; the diagonal of `adj` is ignored.
    pub fn from_parts(names: Vec<String>, labels: Vec<L>, adj: &Gf2Matrix) -> Result<Self> {
        assert_eq!(names.len(), labels.len());
        assert_eq!(names.len(), adj.dim());
        let mut g = Self::with_vertices(names.into_iter().zip(labels))?;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if adj.get(i, j) || adj.get(j, i) {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> L {
        self.labels[i]
    }

    pub fn set_label(&mut self, i: usize, label: L) {
        self.labels[i] = label;
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{i}")))
        }
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.adj.get(i, j)
    }

    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        assert!(i != j, "self-loops are not edges");
        self.adj.set(i, j, present);
        self.adj.set(j, i, present);
    }

    pub fn toggle_edge(&mut self, i: usize, j: usize) {
        assert!(i != j, "self-loops are not edges");
        self.adj.toggle(i, j);
        self.adj.toggle(j, i);
    }

    pub fn add_edge_by_name(&mut self, a: &str, b: &str) -> Result<()> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        if i == j {
            return Err(Error::SameVertex(a.to_string()));
        }
        self.set_edge(i, j, true);
        Ok(())
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Neighbourhood of `i` as packed words (bit `j` set iff `j ~ i`).
    pub fn neighbor_words(&self, i: usize) -> &[u64] {
        self.adj.row_words(i)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.adj.row_words(i).iter().all(|&w| w == 0)
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (i + 1..n).filter(move |&j| self.adj.get(i, j)).map(move |j| (i, j))).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Off-diagonal adjacency with the label-derived diagonal (framing or loop flag).
    pub fn adjacency_matrix(&self) -> Gf2Matrix {
        let mut m = self.adj.clone();
        for (i, l) in self.labels.iter().enumerate() {
            m.set(i, i, l.diagonal_bit());
        }
        m
    }

    /// Appends a vertex and returns its index.
    pub fn add_vertex(&mut self, name: impl Into<String>, label: L) -> Result<usize> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(Error::BadName(name));
        }
        if self.names.contains(&name) {
            return Err(Error::DuplicateName(name));
        }
        let n = self.len();
        let mut adj = Gf2Matrix::zeros(n + 1);
        for i in 0..n {
            for j in 0..n {
                if self.adj.get(i, j) {
                    adj.set(i, j, true);
                }
            }
        }
        self.adj = adj;
        self.names.push(name);
        self.labels.push(label);
        Ok(n)
    }

    /// Removes the given vertices; the remaining ones keep their relative order.
    pub fn remove_vertices(&self, doomed: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !doomed.contains(i)).collect();
        self.induced(&keep)
    }

    /// Induced subgraph on `keep`, in that order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        Self {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            adj: self.adj.principal_submatrix(keep),
        }
    }

    /// Reorders vertices: vertex `k` of the result is vertex `order[k]` of `self`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.len());
        self.induced(order)
    }

    /// Same graph with vertex names exchanged at positions `i` and `j`.
    pub fn with_names_swapped(&self, i: usize, j: usize) -> Self {
        let mut g = self.clone();
        g.names.swap(i, j);
        g
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Local complementation `LC(G; v)`: toggles every edge between two
    /// distinct neighbours of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Self> {
        self.check_index(v)?;
        let mut g = self.clone();
        let nb = self.neighbors(v);
        for (k, &a) in nb.iter().enumerate() {
            for &b in &nb[k + 1..] {
                g.toggle_edge(a, b);
            }
        }
        Ok(g)
    }

    /// Pivot `piv(G; u, v)`: toggles `{x, y}` for `x, y ∉ {u, v}` with
    /// `x ∈ N(u)`, `y ∈ N(v)` and `x ∉ N(v)` or `y ∉ N(u)`. Neighbourhoods of
    /// `u` and `v` themselves are untouched.
    pub fn pivot(&self, u: usize, v: usize) -> Result<Self> {
        self.check_index(u)?;
        self.check_index(v)?;
        if u == v {
            return Err(Error::SameVertex(self.names[u].clone()));
        }
        let n = self.len();
        let qualifies = |x: usize, y: usize| {
            self.adjacent(u, x) && self.adjacent(v, y) && (!self.adjacent(v, x) || !self.adjacent(u, y))
        };
        let mut g = self.clone();
        for x in 0..n {
            if x == u || x == v {
                continue;
            }
            for y in x + 1..n {
                if y == u || y == v {
                    continue;
                }
                if qualifies(x, y) || qualifies(y, x) {
                    g.toggle_edge(x, y);
                }
            }
        }
        Ok(g)
    }

    /// Same graph with every label replaced by `f(label)`.
    pub fn map_labels<M: VertexLabel>(&self, f: impl Fn(L) -> M) -> Graph<M> {
        Graph { names: self.names.clone(), labels: self.labels.iter().map(|&l| f(l)).collect(), adj: self.adj.clone() }
    }

    /// Same graph with every vertex label cleared.
    pub fn underlying(&self) -> Graph<bool> {
        self.map_labels(|_| false)
    }
}

impl<L: VertexLabel> Default for Graph<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl LabeledGraph {
    /// Inverse of [`Graph::adjacency_matrix`]: framings from the diagonal,
    /// signs from the side channel.
    pub fn from_matrix(m: &Gf2Matrix, names: Vec<String>, signs: &[Sign]) -> Result<Self> {
        assert_eq!(signs.len(), m.dim());
        let labels = (0..m.dim()).map(|i| Label::new(m.get(i, i), signs[i])).collect();
        Self::from_parts(names, labels, m)
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.labels.iter().map(|l| l.sign).collect()
    }

    pub fn framings(&self) -> Vec<bool> {
        self.labels.iter().map(|l| l.framing).collect()
    }
}

impl LoopedGraph {
    /// Loops from the diagonal, adjacency from the rest.
    pub fn from_matrix(m: &Gf2Matrix, names: Vec<String>) -> Result<Self> {
        let labels = m.diagonal();
        Self::from_parts(names, labels, m)
    }

    pub fn is_looped(&self, i: usize) -> bool {
        self.labels[i]
    }
}

impl fmt::Debug for Graph<Label> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph[")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", self.names[i], self.labels[i])?;
        }
        write!(f, " |")?;
        for (i, j) in self.edges() {
            write!(f, " {}-{}", self.names[i], self.names[j])?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Graph<bool> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopedGraph[")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", self.names[i], if self.labels[i] { "*" } else { "" })?;
        }
        write!(f, " |")?;
        for (i, j) in self.edges() {
            write!(f, " {}-{}", self.names[i], self.names[j])?;
        }
        write!(f, "]")
    }
}

/// Finds an adjacency-preserving bijection `g1 -> g2` (vertex `i` of `g1`
/// maps to `result[i]` of `g2`). With `respect_labels`, labels must match too.
pub fn are_isomorphic<L: VertexLabel>(g1: &Graph<L>, g2: &Graph<L>, respect_labels: bool) -> Option<Vec<usize>> {
    let n = g1.len();
    if n != g2.len() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let signature = |g: &Graph<L>, i: usize| {
        let mut nd: Vec<usize> = g.neighbors(i).iter().map(|&j| g.degree(j)).collect();
        nd.sort_unstable();
        (if respect_labels { g.label(i).code() } else { 0 }, g.degree(i), nd)
    };
    let sig1: Vec<_> = (0..n).map(|i| signature(g1, i)).collect();
    let sig2: Vec<_> = (0..n).map(|i| signature(g2, i)).collect();
    {
        let (mut a, mut b) = (sig1.clone(), sig2.clone());
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }
    // Map vertices of g1 in BFS order so that each new vertex has mapped neighbours.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for comp in g1.components() {
        let start = comp.iter().copied().max_by_key(|&v| g1.degree(v)).unwrap();
        placed[start] = true;
        let mut k = order.len();
        order.push(start);
        while k < order.len() {
            for u in g1.neighbors(order[k]) {
                if !placed[u] {
                    placed[u] = true;
                    order.push(u);
                }
            }
            k += 1;
        }
    }

    fn extend<L: VertexLabel>(
        depth: usize,
        order: &[usize],
        g1: &Graph<L>,
        g2: &Graph<L>,
        sig1: &[(u8, usize, Vec<usize>)],
        sig2: &[(u8, usize, Vec<usize>)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..g2.len() {
            if used[w] || sig1[v] != sig2[w] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&p| g1.adjacent(v, p) == g2.adjacent(w, map[p]));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(depth + 1, order, g1, g2, sig1, sig2, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &order, g1, g2, &sig1, &sig2, &mut map, &mut used).then_some(map)
}

/// `b` with its vertices put in the name order of `a`, when the name sets agree.
pub fn align_by_names<L: VertexLabel>(a: &Graph<L>, b: &Graph<L>) -> Option<Graph<L>> {
    if a.len() != b.len() {
        return None;
    }
    let order = a.names().iter().map(|n| b.index_of(n).ok()).collect::<Option<Vec<_>>>()?;
    Some(b.reordered(&order))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> LoopedGraph {
        let mut g = LoopedGraph::from_labels(&vec![false; n]);
        for i in 0..n.saturating_sub(1) {
            g.set_edge(i, i + 1, true);
        }
        g
    }

    fn plus0() -> Label {
        Label::new(false, Sign::Plus)
    }

    #[test]
    fn labeled_adjacency_examples() {
        let g = LabeledGraph::from_labels(&[plus0()]);
        assert_eq!(g.adjacency_matrix(), Gf2Matrix::from_rows(&[[0u8]]));

        let mut g = LabeledGraph::from_labels(&[Label::new(true, Sign::Plus); 2]);
        g.set_edge(0, 1, true);
        assert_eq!(g.adjacency_matrix(), Gf2Matrix::from_rows(&[[1u8, 1], [1, 1]]));

        let p = path(3).map_labels(|_| plus0());
        assert_eq!(p.adjacency_matrix(), Gf2Matrix::from_rows(&[[0u8, 1, 0], [1, 0, 1], [0, 1, 0]]));
    }

    #[test]
    fn looped_adjacency_examples() {
        let g = LoopedGraph::from_labels(&[true]);
        assert_eq!(g.adjacency_matrix(), Gf2Matrix::from_rows(&[[1u8]]));
        let k2 = path(2);
        assert_eq!(k2.adjacency_matrix(), Gf2Matrix::from_rows(&[[0u8, 1], [1, 0]]));
        let mut g = path(2);
        g.set_label(0, true);
        assert_eq!(g.adjacency_matrix(), Gf2Matrix::from_rows(&[[1u8, 1], [1, 0]]));
    }

    #[test]
    fn matrix_round_trip() {
        let mut g = LabeledGraph::from_labels(&[Label::new(true, Sign::Minus), plus0(), Label::new(true, Sign::Plus)]);
        g.set_edge(0, 2, true);
        let back = LabeledGraph::from_matrix(&g.adjacency_matrix(), g.names().to_vec(), &g.signs()).unwrap();
        assert_eq!(back, g);
        let mut l = path(3);
        l.set_label(1, true);
        assert_eq!(LoopedGraph::from_matrix(&l.adjacency_matrix(), l.names().to_vec()).unwrap(), l);
    }

    #[test]
    fn local_complement_examples() {
        let p = path(3);
        let lc = p.local_complement(1).unwrap();
        assert_eq!(lc.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(p.local_complement(0).unwrap(), p);
        assert_eq!(lc.local_complement(1).unwrap(), p);
        assert!(matches!(p.local_complement(3), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn pivot_examples() {
        let p = path(4);
        let pv = p.pivot(1, 2).unwrap();
        assert_eq!(pv.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let two = LoopedGraph::from_labels(&[false, false]);
        assert_eq!(two.pivot(0, 1).unwrap(), two);
        assert!(matches!(p.pivot(2, 2), Err(Error::SameVertex(_))));
        assert!(matches!(p.pivot(0, 9), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn pivot_is_involutive_on_all_graphs_up_to_five_vertices() {
        for n in 2..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            for code in 0u32..1 << pairs.len() {
                let mut g = LoopedGraph::from_labels(&vec![false; n]);
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if code >> k & 1 == 1 {
                        g.set_edge(i, j, true);
                    }
                }
                for u in 0..n {
                    for v in 0..n {
                        if u != v {
                            assert_eq!(g.pivot(u, v).unwrap().pivot(u, v).unwrap(), g);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let abc = path(3);
        let mut bca = LoopedGraph::from_labels(&[false; 3]);
        bca.set_edge(1, 2, true);
        bca.set_edge(2, 0, true);
        let map = are_isomorphic(&abc, &bca, true).unwrap();
        for (i, j) in abc.edges() {
            assert!(bca.adjacent(map[i], map[j]));
        }
        assert!(are_isomorphic(&path(2), &LoopedGraph::from_labels(&[false, false]), false).is_none());
        assert!(are_isomorphic(&LoopedGraph::from_labels(&[true]), &LoopedGraph::from_labels(&[false]), true).is_none());
        assert!(are_isomorphic(&LoopedGraph::from_labels(&[true]), &LoopedGraph::from_labels(&[false]), false).is_some());
    }

    #[test]
    fn names_are_validated() {
        assert!(matches!(LoopedGraph::with_vertices([("a", false), ("a", true)]), Err(Error::DuplicateName(_))));
        assert!(matches!(LoopedGraph::with_vertices([("a b", false)]), Err(Error::BadName(_))));
        let mut g = LoopedGraph::new();
        g.add_vertex("x", false).unwrap();
        assert!(g.add_vertex("x", true).is_err());
    }

    #[test]
    fn sign_arithmetic() {
        assert_eq!(-Sign::Plus, Sign::Minus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::from_i32(-1), Some(Sign::Minus));
        assert_eq!(Sign::from_i32(0), None);
    }
}
