//! Component count and writhe numbers of labeled graphs.
//!
//! Everything is read off `B(G) = A(G) + E`: the number of components is
//! `corank B(G) + 1`, and for graph-knots (`det B(G) = 1`) the writhe number
//! of `v_i` is `(-1)^{corank B_i(G)} sign(v_i)` with `B_i(G) = B(G) + E_ii`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::graph::{LabeledGraph, Sign};

/// `A(G) + E`.
pub fn shifted_adjacency(g: &LabeledGraph) -> Gf2Matrix {
    g.adjacency_matrix().add(&Gf2Matrix::identity(g.len()))
}

pub fn component_count(g: &LabeledGraph) -> usize {
    shifted_adjacency(g).corank() + 1
}

pub fn is_graph_knot(g: &LabeledGraph) -> bool {
    shifted_adjacency(g).determinant()
}

fn require_knot(b: &Gf2Matrix) -> Result<()> {
    if b.determinant() {
        Ok(())
    } else {
        Err(Error::NotAKnot { corank: b.corank() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WritheReport {
    /// `w_i` for each vertex, each `+1` or `-1`.
    #[serde(rename = "w")]
    pub per_vertex: Vec<i32>,
    pub total: i32,
    pub signs: Vec<i32>,
    pub framings: Vec<u8>,
}

pub fn writhe(g: &LabeledGraph) -> Result<WritheReport> {
    let b = shifted_adjacency(g);
    require_knot(&b)?;
    let per_vertex: Vec<i32> = (0..g.len())
        .map(|i| {
            let bi = b.flip_diagonal_entry(i).expect("index in range");
            parity_sign(bi.corank()) * g.label(i).sign.to_i32()
        })
        .collect();
    Ok(WritheReport {
        total: per_vertex.iter().sum(),
        per_vertex,
        signs: g.signs().into_iter().map(Sign::to_i32).collect(),
        framings: g.framings().into_iter().map(u8::from).collect(),
    })
}

/// `w_i` computed from the deleted matrix `B̂_i(G)`:
/// `(-1)^{corank B̂_i(G) + 1} sign(v_i)`.
pub fn writhe_via_minor(g: &LabeledGraph, i: usize) -> Result<i32> {
    let b = shifted_adjacency(g);
    require_knot(&b)?;
    let minor = b.delete_rows_cols(&[i])?;
    Ok(parity_sign(minor.corank() + 1) * g.label(i).sign.to_i32())
}

fn parity_sign(k: usize) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}
