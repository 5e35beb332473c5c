//! Naive reference implementations used as independent oracles by the
//! integration tests. Everything here works on plain `Vec<Vec<u8>>`
//! matrices so it shares no code with the bit-packed library routines.

#![allow(dead_code)]

use graphlink::{Graph, Label, LabeledGraph, Sign, VertexLabel};

pub type Mat = Vec<Vec<u8>>;

pub fn rank(m: &Mat) -> usize {
    let mut m = m.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] == 1) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] == 1 {
                for k in 0..cols {
                    m[i][k] ^= m[r][k];
                }
            }
        }
        r += 1;
    }
    r
}

pub fn corank(m: &Mat) -> usize {
    m.len() - rank(m)
}

pub fn det(m: &Mat) -> u8 {
    u8::from(corank(m) == 0)
}

/// Gauss-Jordan inverse, `None` when singular.
pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut a: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u8::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| a[i][c] == 1)?;
        a.swap(c, p);
        for i in 0..n {
            if i != c && a[i][c] == 1 {
                for k in 0..2 * n {
                    a[i][k] ^= a[c][k];
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn delete(m: &Mat, i: usize) -> Mat {
    m.iter()
        .enumerate()
        .filter(|&(r, _)| r != i)
        .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect())
        .collect()
}

pub fn adjacency<L: VertexLabel>(g: &Graph<L>) -> Mat {
    let n = g.len();
    (0..n).map(|i| (0..n).map(|j| u8::from(i != j && g.adjacent(i, j))).collect()).collect()
}

/// `A(G) + E` with the framings on the diagonal of `A(G)`.
pub fn b_matrix(g: &LabeledGraph) -> Mat {
    let mut m = adjacency(g);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = u8::from(g.label(i).framing) ^ 1;
    }
    m
}

/// Writhe numbers straight from the definition: `(-1)^corank(B_i) sign v_i`
/// with `B_i` the matrix `B` with its `i`-th diagonal entry flipped.
pub fn writhe_by_definition(g: &LabeledGraph) -> Vec<i32> {
    let b = b_matrix(g);
    (0..g.len())
        .map(|i| {
            let mut bi = b.clone();
            bi[i][i] ^= 1;
            let parity = if corank(&bi) % 2 == 0 { 1 } else { -1 };
            parity * g.label(i).sign.to_i32()
        })
        .collect()
}

/// Interlacement from the word: two chords are linked when exactly one end
/// of one lies strictly between the ends of the other.
pub fn interlaced_pairs(word: &[&str]) -> Vec<(String, String)> {
    let mut names: Vec<&str> = Vec::new();
    for t in word {
        if !names.contains(t) {
            names.push(t);
        }
    }
    let pos = |c: &str| -> (usize, usize) {
        let mut it = word.iter().enumerate().filter(|(_, t)| **t == c).map(|(i, _)| i);
        (it.next().unwrap(), it.next().unwrap())
    };
    let mut out = Vec::new();
    for (x, a) in names.iter().enumerate() {
        for b in &names[x + 1..] {
            let (a0, a1) = pos(a);
            let (b0, b1) = pos(b);
            let inside = |p: usize| a0 < p && p < a1;
            if inside(b0) != inside(b1) {
                out.push((a.to_string(), b.to_string()));
            }
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Brute-force isomorphism of the underlying simple graphs.
pub fn isomorphic_by_brute_force<L: VertexLabel, M: VertexLabel>(g: &Graph<L>, h: &Graph<M>) -> bool {
    let n = g.len();
    if n != h.len() {
        return false;
    }
    let (a, b) = (adjacency(g), adjacency(h));
    permutations(n).iter().any(|p| (0..n).all(|i| (0..n).all(|j| a[i][j] == b[p[i]][p[j]])))
}

/// Simple graph on `n` vertices whose edge set is the bit mask `mask` over
/// the pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph<bool> {
    let mut g = Graph::from_labels(&vec![false; n]);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    g
}

pub fn labeled_from_mask(n: usize, mask: u64, framings: u32, signs: u32) -> LabeledGraph {
    let labels: Vec<Label> = (0..n)
        .map(|i| Label::new(framings >> i & 1 == 1, if signs >> i & 1 == 1 { Sign::Minus } else { Sign::Plus }))
        .collect();
    let shape = graph_from_mask(n, mask);
    let mut g = LabeledGraph::from_labels(&labels);
    for (i, j) in shape.edges() {
        g.set_edge(i, j, true);
    }
    g
}

pub fn pairs(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Pivot straight from its definition.
pub fn pivot_by_definition(g: &Graph<bool>, u: usize, v: usize) -> Graph<bool> {
    let n = g.len();
    let mut h = g.clone();
    for x in 0..n {
        for y in 0..n {
            if x >= y || [u, v].contains(&x) || [u, v].contains(&y) {
                continue;
            }
            let class = |z: usize| (g.adjacent(z, u), g.adjacent(z, v));
            let (cx, cy) = (class(x), class(y));
            let toggled = cx != (false, false) && cy != (false, false) && cx != cy;
            if toggled {
                h.toggle_edge(x, y);
            }
        }
    }
    h
}
