//! Chord diagrams, their interlacement graphs, and realizability of graphs
//! as interlacement graphs.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{valid_name, Graph, Label, LabeledGraph, VertexLabel};

/// Double-occurrence word with labeled chords.
///
/// Chords are numbered in order of first occurrence; `word` lists chord
/// numbers around the circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordDiagram {
    word: Vec<usize>,
    names: Vec<String>,
    labels: Vec<Label>,
}

impl ChordDiagram {
    /// Chord diagram from the tokens of a double-occurrence word; every chord
    /// is labeled `(0,+)`.
    pub fn from_word<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut count: Vec<usize> = Vec::new();
        let mut word = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let tok = tok.as_ref();
            if !valid_name(tok) {
                return Err(Error::BadName(tok.to_string()));
            }
            let c = *index.entry(tok).or_insert_with(|| {
                names.push(tok.to_string());
                count.push(0);
                names.len() - 1
            });
            count[c] += 1;
            if count[c] > 2 {
                return Err(Error::BadWord(format!("`{tok}` occurs more than twice")));
            }
            word.push(c);
        }
        if let Some(c) = count.iter().position(|&k| k != 2) {
            return Err(Error::BadWord(format!("`{}` occurs only once", names[c])));
        }
        let labels = vec![Label::default(); names.len()];
        Ok(Self { word, names, labels })
    }

    pub fn chord_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// The word as chord names.
    pub fn tokens(&self) -> Vec<&str> {
        self.word.iter().map(|&c| self.names[c].as_str()).collect()
    }

    pub fn set_label(&mut self, name: &str, label: Label) -> Result<()> {
        let c = self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
        self.labels[c] = label;
        Ok(())
    }

    fn endpoints(&self) -> Vec<(usize, usize)> {
        let mut ends = vec![(usize::MAX, usize::MAX); self.names.len()];
        for (pos, &c) in self.word.iter().enumerate() {
            if ends[c].0 == usize::MAX {
                ends[c].0 = pos;
            } else {
                ends[c].1 = pos;
            }
        }
        ends
    }

    /// Same diagram read from position `k` onwards.
    pub fn rotated(&self, k: usize) -> Self {
        let len = self.word.len();
        let tokens: Vec<&str> = (0..len).map(|i| self.names[self.word[(i + k) % len]].as_str()).collect();
        self.relabeled_copy(&tokens)
    }

    /// Same diagram read in the opposite direction.
    pub fn reflected(&self) -> Self {
        let tokens: Vec<&str> = self.word.iter().rev().map(|&c| self.names[c].as_str()).collect();
        self.relabeled_copy(&tokens)
    }

    fn relabeled_copy(&self, tokens: &[&str]) -> Self {
        let mut d = Self::from_word(tokens).expect("rearranged word stays valid");
        for (c, name) in self.names.iter().enumerate() {
            d.set_label(name, self.labels[c]).expect("same chord names");
        }
        d
    }
}

/// Labeled interlacement graph: one vertex per chord (first-occurrence order),
/// edges between linked chords.
pub fn interlacement(d: &ChordDiagram) -> LabeledGraph {
    let ends = d.endpoints();
    let mut g = LabeledGraph::with_vertices(d.names.iter().cloned().zip(d.labels.iter().copied()))
        .expect("chord names are validated on construction");
    for a in 0..ends.len() {
        for b in a + 1..ends.len() {
            let (a0, a1) = ends[a];
            let inside = |p: usize| a0 < p && p < a1;
            if inside(ends[b].0) != inside(ends[b].1) {
                g.set_edge(a, b, true);
            }
        }
    }
    g
}

/// Whether the chords split into two families of pairwise unlinked chords.
pub fn is_d_diagram(d: &ChordDiagram) -> bool {
    is_bipartite(&interlacement(d))
}

pub fn is_bipartite<L: VertexLabel>(g: &Graph<L>) -> bool {
    let mut side: Vec<Option<bool>> = vec![None; g.len()];
    for comp in g.components() {
        side[comp[0]] = Some(false);
        let mut queue = vec![comp[0]];
        while let Some(v) = queue.pop() {
            let s = side[v].expect("queued vertices are coloured");
            for u in g.neighbors(v) {
                match side[u] {
                    None => {
                        side[u] = Some(!s);
                        queue.push(u);
                    }
                    Some(t) if t == s => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

pub const DEFAULT_REALIZE_BOUND: usize = 9;

#[derive(Debug, Clone, Copy)]
pub struct RealizeOptions {
    pub max_vertices: usize,
    pub time_budget: Option<Duration>,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self { max_vertices: DEFAULT_REALIZE_BOUND, time_budget: None }
    }
}

#[derive(Debug, Clone)]
pub struct Realization {
    /// `None` means the search was exhaustive and found no diagram.
    pub diagram: Option<ChordDiagram>,
    pub nodes: u64,
}

/// Searches for a chord diagram whose interlacement graph is `g` (loops are
/// ignored, labels become chord labels).
///
/// Chord `i` realizes vertex `i`, so a returned diagram reproduces `g`
/// exactly, not only up to isomorphism.
pub fn realize<L: VertexLabel>(g: &Graph<L>, opts: RealizeOptions) -> Result<Realization> {
    let n = g.len();
    if n > opts.max_vertices {
        return Err(Error::TooLarge { n, bound: opts.max_vertices });
    }
    let mut r = Realizer {
        g,
        n,
        opened_at: vec![None; n],
        closed: vec![false; n],
        open: Vec::new(),
        word: Vec::with_capacity(2 * n),
        nodes: 0,
        deadline: opts.time_budget.map(|d| Instant::now() + d),
    };
    let found = n == 0 || r.place()?;
    let nodes = r.nodes;
    let diagram = found.then(|| {
        let tokens: Vec<&str> = r.word.iter().map(|&v| g.name(v)).collect();
        let mut d = ChordDiagram::from_word(&tokens).expect("realizer emits a double-occurrence word");
        for v in 0..n {
            d.set_label(g.name(v), g.label(v).chord_label()).expect("chord names are vertex names");
        }
        d
    });
    Ok(Realization { diagram, nodes })
}

struct Realizer<'a, L> {
    g: &'a Graph<L>,
    n: usize,
    opened_at: Vec<Option<usize>>,
    closed: Vec<bool>,
    /// Currently open chords in opening order.
    open: Vec<usize>,
    word: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
}

impl<L: VertexLabel> Realizer<'_, L> {
    /// Among the open chords, the one every other must close after, if the
    /// required closing order is consistent.
    fn next_to_close(&self) -> Option<Option<usize>> {
        let k = self.open.len();
        if k == 0 {
            return Some(None);
        }
        // For open chords i before j: linked means i closes first, nested means j does.
        let mut score = vec![0usize; k];
        for a in 0..k {
            for b in a + 1..k {
                if self.g.adjacent(self.open[a], self.open[b]) {
                    score[a] += 1;
                } else {
                    score[b] += 1;
                }
            }
        }
        let mut sorted = score.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &s)| i != s) {
            return None;
        }
        Some(score.iter().position(|&s| s == k - 1).map(|i| self.open[i]))
    }

    /// Checks the full neighbourhood of `a` at the moment it closes.
    fn closing_consistent(&self, a: usize) -> bool {
        let start = self.opened_at[a].expect("closing an open chord");
        (0..self.n).filter(|&b| b != a).all(|b| {
            let linked = match self.opened_at[b] {
                None => false,
                Some(p) if p > start => !self.closed[b],
                Some(_) => self.closed[b] && self.closed_after(b, start),
            };
            linked == self.g.adjacent(a, b)
        })
    }

    fn closed_after(&self, b: usize, start: usize) -> bool {
        self.word[start..].contains(&b)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 1024 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::BudgetExceeded { nodes: self.nodes });
                }
            }
        }
        Ok(())
    }

    fn place(&mut self) -> Result<bool> {
        self.tick()?;
        let pos = self.word.len();
        if pos == 2 * self.n {
            return Ok(true);
        }
        let Some(closer) = self.next_to_close() else {
            return Ok(false);
        };
        if let Some(a) = closer {
            // chord 0 may be taken to close no later than position n
            let allowed = a != 0 || pos <= self.n;
            if allowed && self.closing_consistent(a) {
                self.closed[a] = true;
                self.open.retain(|&x| x != a);
                self.word.push(a);
                if self.place()? {
                    return Ok(true);
                }
                self.word.pop();
                let at = self.open.partition_point(|&x| self.opened_at[x] < self.opened_at[a]);
                self.open.insert(at, a);
                self.closed[a] = false;
            }
        }
        let candidates: Vec<usize> = if pos == 0 { vec![0] } else { (1..self.n).collect() };
        for x in candidates {
            if self.opened_at[x].is_some() {
                continue;
            }
            // everything already closed lies on one side of x
            if (0..self.n).any(|c| self.closed[c] && self.g.adjacent(x, c)) {
                continue;
            }
            self.opened_at[x] = Some(pos);
            self.open.push(x);
            self.word.push(x);
            if self.place()? {
                return Ok(true);
            }
            self.word.pop();
            self.open.pop();
            self.opened_at[x] = None;
        }
        Ok(false)
    }
}
