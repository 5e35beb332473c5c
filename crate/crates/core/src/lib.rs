//! Graph-links and homotopy classes of looped interlacement graphs.
//!
//! Labeled graphs (vertices carry a framing bit and a sign) modulo the
//! graph-moves `Ωg1`–`Ωg4'` form graph-links; looped graphs modulo
//! `Ω1`–`Ω3` form homotopy classes. For one-component graph-links
//! (graph-knots) the two theories are identified by the explicit maps
//! [`correspondence::chi`] and [`correspondence::psi`], both of which reduce
//! to inverting a symmetric matrix over Z/2.

pub mod canon;
pub mod catalog;
pub mod chord;
pub mod cli;
pub mod correspondence;
pub mod error;
pub mod format;
pub mod gf2;
pub mod graph;
pub mod invariants;
pub mod moves;
pub mod random;
pub mod search;
pub mod selftest;

pub use canon::{canonical_form, CanonicalKey};
pub use error::{Error, Result};
pub use gf2::Gf2Matrix;
pub use graph::{are_isomorphic, Graph, Label, LabeledGraph, LoopedGraph, Sign, VertexLabel};
