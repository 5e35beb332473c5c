//! The maps between graph-knots and looped graphs.
//!
//! `chi` inverts `B(G) = A(G) + E`, keeps the off-diagonal part as the new
//! adjacency and puts a loop on every vertex with writhe number `-1`.
//! `psi` goes back: it completes the looped graph's matrix to a nonsingular
//! one by choosing diagonal entries, inverts, adds `E`, and recovers the signs
//! from the loops and the chosen diagonal.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::graph::{LabeledGraph, LoopedGraph, Sign};
use crate::invariants::{shifted_adjacency, writhe};

/// Symmetric matrix agreeing with the input off the diagonal and having det 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalCompletion {
    pub diagonal: Vec<bool>,
    pub matrix: Gf2Matrix,
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

/// Row-echelon basis that answers "is this vector independent of the rows so far?".
#[derive(Clone)]
struct Basis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Basis {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    /// Inserts `v` if it is independent of the basis; returns whether it was.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for (pivot, row) in &self.rows {
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        let Some(pivot) = v.iter().enumerate().find(|(_, w)| **w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
        else {
            return false;
        };
        self.rows.push((pivot, v));
        true
    }
}

/// Finds diagonal entries making `a` nonsingular.
///
/// `preferred` is returned unchanged when it already works; otherwise the
/// lexicographically smallest diagonal (`0 < 1`, position 0 first) is chosen.
pub fn complete_diagonal(a: &Gf2Matrix, preferred: Option<&[bool]>) -> Result<DiagonalCompletion> {
    let n = a.dim();
    if let Some(p) = preferred {
        if p.len() != n {
            return Err(Error::IndexOutOfRange { index: p.len(), len: n });
        }
        let m = a.with_diagonal(p);
        if m.determinant() {
            return Ok(DiagonalCompletion { diagonal: p.to_vec(), matrix: m });
        }
    }
    let mut diag = vec![false; n];
    if search(a, 0, &mut diag, Basis::new()) {
        Ok(DiagonalCompletion { matrix: a.with_diagonal(&diag), diagonal: diag })
    } else {
        Err(Error::InternalContradiction(format!("no nonsingular diagonal completion found for a {n}x{n} matrix")))
    }
}

/// Depth-first search over `diag[k..]`. Rows `0..k` are fully known once
/// `diag[..k]` is fixed, so a dependency among them ends the branch.
fn search(a: &Gf2Matrix, k: usize, diag: &mut [bool], basis: Basis) -> bool {
    if k == a.dim() {
        return true;
    }
    for bit in [false, true] {
        diag[k] = bit;
        let mut row = a.row_words(k).to_vec();
        let (word, off) = (k / 64, k % 64);
        row[word] = row[word] & !(1u64 << off) | (bit as u64) << off;
        let mut next = basis.clone();
        if next.insert(row) && search(a, k + 1, diag, next) {
            return true;
        }
    }
    diag[k] = false;
    false
}

/// `χ(G)`: looped graph on the same vertices.
pub fn chi(g: &LabeledGraph) -> Result<LoopedGraph> {
    let report = writhe(g)?;
    let inv = shifted_adjacency(g).inverse()?;
    let loops: Vec<bool> = report.per_vertex.iter().map(|&w| w == -1).collect();
    LoopedGraph::from_matrix(&inv.with_diagonal(&loops), g.names().to_vec())
}

/// Diagonal of `(A(G)+E)^{-1}`; seeding `psi` with it inverts `chi` exactly.
pub fn seed_diagonal(g: &LabeledGraph) -> Result<Vec<bool>> {
    Ok(shifted_adjacency(g).inverse()?.diagonal())
}

/// `ψ(L)` together with the completion it used.
pub fn psi_with_completion(l: &LoopedGraph, preferred: Option<&[bool]>) -> Result<(LabeledGraph, DiagonalCompletion)> {
    let completion = complete_diagonal(&l.adjacency_matrix(), preferred)?;
    let n = l.len();
    let b = completion.matrix.inverse()?.add(&Gf2Matrix::identity(n));
    let signs: Vec<Sign> = (0..n)
        .map(|i| {
            let w = if l.is_looped(i) { Sign::Minus } else { Sign::Plus };
            let d = if completion.diagonal[i] { Sign::Minus } else { Sign::Plus };
            w * d
        })
        .collect();
    let g = LabeledGraph::from_matrix(&b, l.names().to_vec(), &signs)?;
    Ok((g, completion))
}

pub fn psi(l: &LoopedGraph, preferred: Option<&[bool]>) -> Result<LabeledGraph> {
    psi_with_completion(l, preferred).map(|(g, _)| g)
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundtripReport {
    /// `ψ(χ(G), seed) = G`.
    pub psi_chi_exact: bool,
    /// `χ(ψ(χ(G))) = χ(G)` with the canonical completion.
    pub chi_psi_exact: bool,
    pub seed_diagonal: String,
    pub canonical_diagonal: String,
}

pub fn roundtrip_check(g: &LabeledGraph) -> Result<RoundtripReport> {
    let l = chi(g)?;
    let seed = seed_diagonal(g)?;
    let back = psi(&l, Some(&seed))?;
    let (g2, completion) = psi_with_completion(&l, None)?;
    let l2 = chi(&g2)?;
    Ok(RoundtripReport {
        psi_chi_exact: back == *g,
        chi_psi_exact: l2 == l,
        seed_diagonal: bits_to_string(&seed),
        canonical_diagonal: bits_to_string(&completion.diagonal),
    })
}

/// Labeled graph with the given signs and the framings/edges of `m`.
pub fn labeled_from_matrix(m: &Gf2Matrix, signs: &[Sign]) -> LabeledGraph {
    let names = (0..m.dim()).map(|i| format!("v{i}")).collect();
    LabeledGraph::from_matrix(m, names, signs).expect("generated names are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Label, VertexLabel};
    use crate::random::{random_graph_knot, random_looped_graph, random_symmetric_matrix};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn single(framing: bool, sign: Sign) -> LabeledGraph {
        LabeledGraph::from_labels(&[Label::new(framing, sign)])
    }

    fn k2_plus1() -> LabeledGraph {
        let mut g = LabeledGraph::from_labels(&[Label::new(true, Sign::Plus); 2]);
        g.set_edge(0, 1, true);
        g
    }

    #[test]
    fn chi_examples() {
        let l = chi(&single(false, Sign::Plus)).unwrap();
        assert!(l.is_looped(0));
        assert!(!chi(&single(false, Sign::Minus)).unwrap().is_looped(0));
        let l = chi(&k2_plus1()).unwrap();
        assert_eq!(l.labels(), &[false, false]);
        assert_eq!(l.edges(), vec![(0, 1)]);
        assert!(matches!(chi(&single(true, Sign::Plus)), Err(Error::NotAKnot { .. })));
    }

    #[test]
    fn completion_examples() {
        let c = complete_diagonal(&Gf2Matrix::from_rows(&[[0u8]]), None).unwrap();
        assert_eq!((c.diagonal, c.matrix), (vec![true], Gf2Matrix::from_rows(&[[1u8]])));
        let swap = Gf2Matrix::from_rows(&[[0u8, 1], [1, 0]]);
        let c = complete_diagonal(&swap, None).unwrap();
        assert_eq!((c.diagonal, c.matrix), (vec![false, false], swap));
        let c = complete_diagonal(&Gf2Matrix::zeros(2), None).unwrap();
        assert_eq!((c.diagonal, c.matrix), (vec![true, true], Gf2Matrix::identity(2)));
        let c = complete_diagonal(&Gf2Matrix::zeros(0), None).unwrap();
        assert!(c.diagonal.is_empty());
    }

    #[test]
    fn preferred_diagonal_is_kept_when_it_works() {
        let m = Gf2Matrix::from_rows(&[[0u8, 1], [1, 0]]);
        let c = complete_diagonal(&m, Some(&[true, false])).unwrap();
        assert_eq!(c.diagonal, vec![true, false]);
        // [[1,1],[1,1]] is singular, so the canonical choice is used instead
        let c = complete_diagonal(&m, Some(&[true, true])).unwrap();
        assert_eq!(c.diagonal, vec![false, false]);
    }

    #[test]
    fn completion_is_the_lexicographic_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6);
            let a = random_symmetric_matrix(&mut rng, n);
            let c = complete_diagonal(&a, None).unwrap();
            let first = (0u32..1 << n)
                .map(|code| (0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect::<Vec<_>>())
                .find(|d| a.with_diagonal(d).determinant())
                .unwrap();
            assert_eq!(c.diagonal, first);
        }
    }

    #[test]
    fn psi_examples() {
        let g = psi(&LoopedGraph::from_labels(&[true]), None).unwrap();
        assert_eq!(g.label(0), Label::new(false, Sign::Plus));
        let g = psi(&LoopedGraph::from_labels(&[false]), None).unwrap();
        assert_eq!(g.label(0), Label::new(false, Sign::Minus));
        let mut k2 = LoopedGraph::from_labels(&[false, false]);
        k2.set_edge(0, 1, true);
        let g = psi(&k2, None).unwrap();
        assert_eq!(g.labels(), &[Label::new(true, Sign::Plus); 2]);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn roundtrip_examples() {
        for g in [single(false, Sign::Plus), k2_plus1()] {
            let r = roundtrip_check(&g).unwrap();
            assert!(r.psi_chi_exact && r.chi_psi_exact);
        }
    }

    #[test]
    fn chi_is_equivariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let g = random_graph_knot(&mut rng, n, 0.5);
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            assert_eq!(chi(&g.reordered(&perm)).unwrap(), chi(&g).unwrap().reordered(&perm));
        }
    }

    #[test]
    fn psi_output_is_a_graph_knot_with_the_loops_as_writhe() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(0..=9);
            let l = random_looped_graph(&mut rng, n, 0.5);
            let g = psi(&l, None).unwrap();
            let w = writhe(&g).unwrap();
            for i in 0..n {
                assert_eq!(w.per_vertex[i] == -1, l.label(i).diagonal_bit());
            }
        }
    }

    proptest! {
        #[test]
        fn seeded_round_trip_is_exact(seed in any::<u64>(), n in 0usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph_knot(&mut rng, n, 0.5);
            let r = roundtrip_check(&g).unwrap();
            prop_assert!(r.psi_chi_exact);
            prop_assert!(r.chi_psi_exact);
        }
    }
}
