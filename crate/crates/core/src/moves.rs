//! Reidemeister-type moves on labeled graphs (`Ωg1`–`Ωg4'`) and on looped
//! graphs (`Ω1`–`Ω3`).
//!
//! A [`Move`] names its vertices by token, so a sequence of moves can be
//! replayed on a graph read back from disk. Removals and in-place moves are
//! enumerated by [`list_graph_moves`] and [`list_loop_moves`]; additions carry
//! their whole payload (labels, attachment set) and are built by the caller.
//!
//! `Ωg3` is implemented in the following form. Forward: `u, v, w` all
//! labeled `(0,-)`, `N(u) = {v, w}` and `v ≁ w`. Afterwards `u` is adjacent
//! exactly to `(N(v) Δ N(w)) \ {u, v, w}`, `v` and `w` exchange their
//! neighbourhoods outside the triple, and both become `(0,+)`. The inverse
//! applies when `u` is `(0,-)`, `v, w` are `(0,+)`, the triple is pairwise
//! non-adjacent and `N(u) = N(v) Δ N(w)`. This keeps `corank(A+E)` and the
//! writhe numbers of the triple unchanged.
//!
//! Descriptor grammar, one move per line:
//!
//! ```text
//! Og1 add a:(0,+)          Og1 del a
//! Og2 add a:(0,+) b:(0,-) adj=0 nbrs=c,d
//! Og2 del a b
//! Og3 fwd u v w            Og3 inv u v w
//! Og4 u v                  Og4' v
//! O1 add x loop=1          O1 del x
//! O2 add a b adj=0 nbrs=c,d    (a looped, b unlooped)
//! O2 del a b
//! O3 u v w
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{valid_name, Graph, Label, LabeledGraph, LoopedGraph, Sign, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Og1,
    Og2,
    Og3,
    Og4,
    Og4Prime,
    O1,
    O2,
    O3,
}

impl Family {
    pub const GRAPH: [Family; 5] = [Family::Og1, Family::Og2, Family::Og3, Family::Og4, Family::Og4Prime];
    pub const LOOP: [Family; 3] = [Family::O1, Family::O2, Family::O3];

    pub fn token(self) -> &'static str {
        match self {
            Family::Og1 => "Og1",
            Family::Og2 => "Og2",
            Family::Og3 => "Og3",
            Family::Og4 => "Og4",
            Family::Og4Prime => "Og4'",
            Family::O1 => "O1",
            Family::O2 => "O2",
            Family::O3 => "O3",
        }
    }

    pub fn is_graph_family(self) -> bool {
        Family::GRAPH.contains(&self)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let all = Family::GRAPH.iter().chain(Family::LOOP.iter());
        all.copied()
            .find(|f| f.token().eq_ignore_ascii_case(s) || (s.eq_ignore_ascii_case("Og4p") && *f == Family::Og4Prime))
            .ok_or_else(|| format!("unknown move family `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Og1Remove { v: String },
    Og1Add { v: String, label: Label },
    Og2Remove { a: String, b: String },
    Og2Add { a: String, la: Label, b: String, lb: Label, adjacent: bool, nbrs: Vec<String> },
    Og3 { dir: Direction, u: String, v: String, w: String },
    Og4 { u: String, v: String },
    Og4Prime { v: String },
    O1Remove { v: String },
    O1Add { v: String, looped: bool },
    O2Remove { a: String, b: String },
    /// `a` is looped, `b` is unlooped.
    O2Add { a: String, b: String, adjacent: bool, nbrs: Vec<String> },
    O3 { u: String, v: String, w: String },
}

impl Move {
    pub fn family(&self) -> Family {
        match self {
            Move::Og1Remove { .. } | Move::Og1Add { .. } => Family::Og1,
            Move::Og2Remove { .. } | Move::Og2Add { .. } => Family::Og2,
            Move::Og3 { .. } => Family::Og3,
            Move::Og4 { .. } => Family::Og4,
            Move::Og4Prime { .. } => Family::Og4Prime,
            Move::O1Remove { .. } | Move::O1Add { .. } => Family::O1,
            Move::O2Remove { .. } | Move::O2Add { .. } => Family::O2,
            Move::O3 { .. } => Family::O3,
        }
    }

    pub fn is_addition(&self) -> bool {
        matches!(self, Move::Og1Add { .. } | Move::Og2Add { .. } | Move::O1Add { .. } | Move::O2Add { .. })
    }

    /// Names of the vertices a move introduces.
    pub fn added_names(&self) -> Vec<&str> {
        match self {
            Move::Og1Add { v, .. } | Move::O1Add { v, .. } => vec![v],
            Move::Og2Add { a, b, .. } | Move::O2Add { a, b, .. } => vec![a, b],
            _ => vec![],
        }
    }

    /// Same move with every vertex name passed through `f`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Move {
        let nbrs = |ns: &[String]| ns.iter().map(|n| f(n)).collect::<Vec<_>>();
        match self {
            Move::Og1Remove { v } => Move::Og1Remove { v: f(v) },
            Move::Og1Add { v, label } => Move::Og1Add { v: f(v), label: *label },
            Move::Og2Remove { a, b } => Move::Og2Remove { a: f(a), b: f(b) },
            Move::Og2Add { a, la, b, lb, adjacent, nbrs: ns } => {
                Move::Og2Add { a: f(a), la: *la, b: f(b), lb: *lb, adjacent: *adjacent, nbrs: nbrs(ns) }
            }
            Move::Og3 { dir, u, v, w } => Move::Og3 { dir: *dir, u: f(u), v: f(v), w: f(w) },
            Move::Og4 { u, v } => Move::Og4 { u: f(u), v: f(v) },
            Move::Og4Prime { v } => Move::Og4Prime { v: f(v) },
            Move::O1Remove { v } => Move::O1Remove { v: f(v) },
            Move::O1Add { v, looped } => Move::O1Add { v: f(v), looped: *looped },
            Move::O2Remove { a, b } => Move::O2Remove { a: f(a), b: f(b) },
            Move::O2Add { a, b, adjacent, nbrs: ns } => {
                Move::O2Add { a: f(a), b: f(b), adjacent: *adjacent, nbrs: nbrs(ns) }
            }
            Move::O3 { u, v, w } => Move::O3 { u: f(u), v: f(v), w: f(w) },
        }
    }

    fn not_applicable(&self, reason: impl Into<String>) -> Error {
        Error::MoveNotApplicable { mv: self.to_string(), reason: reason.into() }
    }
}

fn write_names(f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
    write!(f, "{}", names.join(","))
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Og1Remove { v } => write!(f, "Og1 del {v}"),
            Move::Og1Add { v, label } => write!(f, "Og1 add {v}:{label}"),
            Move::Og2Remove { a, b } => write!(f, "Og2 del {a} {b}"),
            Move::Og2Add { a, la, b, lb, adjacent, nbrs } => {
                write!(f, "Og2 add {a}:{la} {b}:{lb} adj={} nbrs=", *adjacent as u8)?;
                write_names(f, nbrs)
            }
            Move::Og3 { dir, u, v, w } => {
                let d = if *dir == Direction::Forward { "fwd" } else { "inv" };
                write!(f, "Og3 {d} {u} {v} {w}")
            }
            Move::Og4 { u, v } => write!(f, "Og4 {u} {v}"),
            Move::Og4Prime { v } => write!(f, "Og4' {v}"),
            Move::O1Remove { v } => write!(f, "O1 del {v}"),
            Move::O1Add { v, looped } => write!(f, "O1 add {v} loop={}", *looped as u8),
            Move::O2Remove { a, b } => write!(f, "O2 del {a} {b}"),
            Move::O2Add { a, b, adjacent, nbrs } => {
                write!(f, "O2 add {a} {b} adj={} nbrs=", *adjacent as u8)?;
                write_names(f, nbrs)
            }
            Move::O3 { u, v, w } => write!(f, "O3 {u} {v} {w}"),
        }
    }
}

fn parse_name(tok: &str) -> std::result::Result<String, String> {
    if valid_name(tok) {
        Ok(tok.to_string())
    } else {
        Err(format!("invalid vertex name `{tok}`"))
    }
}

fn parse_bit(tok: &str, key: &str) -> std::result::Result<bool, String> {
    match tok.strip_prefix(key).and_then(|t| t.strip_prefix('=')) {
        Some("0") => Ok(false),
        Some("1") => Ok(true),
        _ => Err(format!("expected `{key}=0` or `{key}=1`, got `{tok}`")),
    }
}

fn parse_nbrs(tok: &str) -> std::result::Result<Vec<String>, String> {
    let list = tok.strip_prefix("nbrs=").ok_or_else(|| format!("expected `nbrs=...`, got `{tok}`"))?;
    if list.is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(parse_name).collect()
}

/// Parses `name:(f,s)`.
fn parse_labeled(tok: &str) -> std::result::Result<(String, Label), String> {
    let bad = || format!("expected `name:(0|1,+|-)`, got `{tok}`");
    let (name, rest) = tok.split_once(':').ok_or_else(bad)?;
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (fr, sg) = inner.split_once(',').ok_or_else(bad)?;
    let framing = match fr {
        "0" => false,
        "1" => true,
        _ => return Err(bad()),
    };
    let sign = Sign::from_symbol(sg).ok_or_else(bad)?;
    Ok((parse_name(name)?, Label::new(framing, sign)))
}

impl FromStr for Move {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let Some((&head, args)) = toks.split_first() else {
            return Err("empty move descriptor".into());
        };
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(format!("`{head}` expects {k} arguments, got {}", args.len()))
            }
        };
        let family: Family = head.parse()?;
        let mv = match (family, args.first().copied()) {
            (Family::Og1, Some("del")) => {
                arity(2)?;
                Move::Og1Remove { v: parse_name(args[1])? }
            }
            (Family::Og1, Some("add")) => {
                arity(2)?;
                let (v, label) = parse_labeled(args[1])?;
                Move::Og1Add { v, label }
            }
            (Family::Og2, Some("del")) => {
                arity(3)?;
                Move::Og2Remove { a: parse_name(args[1])?, b: parse_name(args[2])? }
            }
            (Family::Og2, Some("add")) => {
                arity(5)?;
                let (a, la) = parse_labeled(args[1])?;
                let (b, lb) = parse_labeled(args[2])?;
                Move::Og2Add { a, la, b, lb, adjacent: parse_bit(args[3], "adj")?, nbrs: parse_nbrs(args[4])? }
            }
            (Family::Og3, Some(d @ ("fwd" | "inv"))) => {
                arity(4)?;
                let dir = if d == "fwd" { Direction::Forward } else { Direction::Inverse };
                Move::Og3 { dir, u: parse_name(args[1])?, v: parse_name(args[2])?, w: parse_name(args[3])? }
            }
            (Family::Og4, _) => {
                arity(2)?;
                Move::Og4 { u: parse_name(args[0])?, v: parse_name(args[1])? }
            }
            (Family::Og4Prime, _) => {
                arity(1)?;
                Move::Og4Prime { v: parse_name(args[0])? }
            }
            (Family::O1, Some("del")) => {
                arity(2)?;
                Move::O1Remove { v: parse_name(args[1])? }
            }
            (Family::O1, Some("add")) => {
                arity(3)?;
                Move::O1Add { v: parse_name(args[1])?, looped: parse_bit(args[2], "loop")? }
            }
            (Family::O2, Some("del")) => {
                arity(3)?;
                Move::O2Remove { a: parse_name(args[1])?, b: parse_name(args[2])? }
            }
            (Family::O2, Some("add")) => {
                arity(5)?;
                Move::O2Add {
                    a: parse_name(args[1])?,
                    b: parse_name(args[2])?,
                    adjacent: parse_bit(args[3], "adj")?,
                    nbrs: parse_nbrs(args[4])?,
                }
            }
            (Family::O3, _) => {
                arity(3)?;
                Move::O3 { u: parse_name(args[0])?, v: parse_name(args[1])?, w: parse_name(args[2])? }
            }
            (_, other) => return Err(format!("`{head}` cannot take `{}`", other.unwrap_or(""))),
        };
        Ok(mv)
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn outside_equal<L: VertexLabel>(g: &Graph<L>, a: usize, b: usize) -> bool {
    (0..g.len()).filter(|&x| x != a && x != b).all(|x| g.adjacent(a, x) == g.adjacent(b, x))
}

/// Outside `{u, v, w}`: is `N(u) = N(v) Δ N(w)`?
fn is_symmetric_difference<L: VertexLabel>(g: &Graph<L>, u: usize, v: usize, w: usize) -> bool {
    (0..g.len())
        .filter(|&t| t != u && t != v && t != w)
        .all(|t| g.adjacent(u, t) == (g.adjacent(v, t) ^ g.adjacent(w, t)))
}

fn distinct(idx: &[usize], names: &[&String]) -> Result<()> {
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return Err(Error::SameVertex(names[i].clone()));
            }
        }
    }
    Ok(())
}

fn lookup<L: VertexLabel>(g: &Graph<L>, names: &[&String]) -> Result<Vec<usize>> {
    let idx = names.iter().map(|n| g.index_of(n)).collect::<Result<Vec<_>>>()?;
    distinct(&idx, names)?;
    Ok(idx)
}

const MINUS0: Label = Label::new(false, Sign::Minus);
const PLUS0: Label = Label::new(false, Sign::Plus);

fn og2_pair_ok(adjacent: bool, la: Label, lb: Label) -> bool {
    la.framing == adjacent && lb.framing == adjacent && la.sign != lb.sign
}

fn og3_forward_ok(g: &LabeledGraph, u: usize, v: usize, w: usize) -> std::result::Result<(), &'static str> {
    if [u, v, w].iter().any(|&x| g.label(x) != MINUS0) {
        return Err("u, v, w must all be labeled (0,-)");
    }
    if g.degree(u) != 2 || !g.adjacent(u, v) || !g.adjacent(u, w) {
        return Err("u must be adjacent exactly to v and w");
    }
    if g.adjacent(v, w) {
        return Err("v and w must not be adjacent");
    }
    Ok(())
}

fn og3_inverse_ok(g: &LabeledGraph, u: usize, v: usize, w: usize) -> std::result::Result<(), &'static str> {
    if g.label(u) != MINUS0 || g.label(v) != PLUS0 || g.label(w) != PLUS0 {
        return Err("u must be labeled (0,-) and v, w labeled (0,+)");
    }
    if g.adjacent(u, v) || g.adjacent(u, w) || g.adjacent(v, w) {
        return Err("u, v, w must be pairwise non-adjacent");
    }
    if !is_symmetric_difference(g, u, v, w) {
        return Err("N(u) must equal N(v) Δ N(w)");
    }
    Ok(())
}

/// Rewires the triple of an `Ωg3` move: `u` gets `N(v) Δ N(w)` outside the
/// triple (forward) or `{v, w}` (inverse), and `v, w` swap outside neighbourhoods.
fn og3_rewire(g: &LabeledGraph, u: usize, v: usize, w: usize, dir: Direction, sign: Sign) -> LabeledGraph {
    let mut h = g.clone();
    for t in 0..g.len() {
        if t == u || t == v || t == w {
            continue;
        }
        let (nv, nw) = (g.adjacent(v, t), g.adjacent(w, t));
        h.set_edge(v, t, nw);
        h.set_edge(w, t, nv);
        h.set_edge(u, t, dir == Direction::Forward && (nv ^ nw));
    }
    let inward = dir == Direction::Inverse;
    h.set_edge(u, v, inward);
    h.set_edge(u, w, inward);
    h.set_label(v, Label::new(false, sign));
    h.set_label(w, Label::new(false, sign));
    h
}

fn attach<L: VertexLabel>(g: &mut Graph<L>, new: usize, nbrs: &[String], mv: &Move) -> Result<()> {
    for name in nbrs {
        let t = g.index_of(name)?;
        if t == new {
            return Err(mv.not_applicable(format!("`{name}` listed as its own neighbour")));
        }
        if g.adjacent(new, t) {
            return Err(mv.not_applicable(format!("neighbour `{name}` listed twice")));
        }
        g.set_edge(new, t, true);
    }
    Ok(())
}

fn check_family(m: &Move, graph_side: bool) -> Result<()> {
    if m.family().is_graph_family() == graph_side {
        Ok(())
    } else {
        let kind = if graph_side { "labeled" } else { "looped" };
        Err(m.not_applicable(format!("{} is not a move on {kind} graphs", m.family())))
    }
}

/// Applies a graph-move. Added vertices are appended in descriptor order.
pub fn apply_graph_move(g: &LabeledGraph, m: &Move) -> Result<LabeledGraph> {
    check_family(m, true)?;
    match m {
        Move::Og1Remove { v } => {
            let i = g.index_of(v)?;
            if !g.is_isolated(i) {
                return Err(m.not_applicable("vertex is not isolated"));
            }
            if g.label(i).framing {
                return Err(m.not_applicable("vertex has framing 1"));
            }
            Ok(g.remove_vertices(&[i]))
        }
        Move::Og1Add { v, label } => {
            if label.framing {
                return Err(m.not_applicable("added vertex must have framing 0"));
            }
            let mut h = g.clone();
            h.add_vertex(v.clone(), *label)?;
            Ok(h)
        }
        Move::Og2Remove { a, b } => {
            let idx = lookup(g, &[a, b])?;
            let (i, j) = (idx[0], idx[1]);
            if !outside_equal(g, i, j) {
                return Err(m.not_applicable("the two vertices have different outside neighbourhoods"));
            }
            if !og2_pair_ok(g.adjacent(i, j), g.label(i), g.label(j)) {
                return Err(m.not_applicable(
                    "need a non-adjacent pair (0,α),(0,-α) or an adjacent pair (1,α),(1,-α)",
                ));
            }
            Ok(g.remove_vertices(&[i, j]))
        }
        Move::Og2Add { a, la, b, lb, adjacent, nbrs } => {
            if !og2_pair_ok(*adjacent, *la, *lb) {
                return Err(m.not_applicable("labels must be (f,α),(f,-α) with f equal to the adjacency bit"));
            }
            if a == b {
                return Err(Error::SameVertex(a.clone()));
            }
            let mut h = g.clone();
            let i = h.add_vertex(a.clone(), *la)?;
            let j = h.add_vertex(b.clone(), *lb)?;
            attach(&mut h, i, nbrs, m)?;
            attach(&mut h, j, nbrs, m)?;
            h.set_edge(i, j, *adjacent);
            Ok(h)
        }
        Move::Og3 { dir, u, v, w } => {
            let idx = lookup(g, &[u, v, w])?;
            let (u, v, w) = (idx[0], idx[1], idx[2]);
            match dir {
                Direction::Forward => {
                    og3_forward_ok(g, u, v, w).map_err(|r| m.not_applicable(r))?;
                    Ok(og3_rewire(g, u, v, w, *dir, Sign::Plus))
                }
                Direction::Inverse => {
                    og3_inverse_ok(g, u, v, w).map_err(|r| m.not_applicable(r))?;
                    Ok(og3_rewire(g, u, v, w, *dir, Sign::Minus))
                }
            }
        }
        Move::Og4 { u, v } => {
            let idx = lookup(g, &[u, v])?;
            let (u, v) = (idx[0], idx[1]);
            if !g.adjacent(u, v) {
                return Err(m.not_applicable("vertices are not adjacent"));
            }
            if g.label(u).framing || g.label(v).framing {
                return Err(m.not_applicable("both vertices need framing 0"));
            }
            let (alpha, beta) = (g.label(u).sign, g.label(v).sign);
            let mut h = g.pivot(u, v)?;
            h.set_label(u, Label::new(false, -beta));
            h.set_label(v, Label::new(false, -alpha));
            Ok(h)
        }
        Move::Og4Prime { v } => {
            let v = g.index_of(v)?;
            if !g.label(v).framing {
                return Err(m.not_applicable("vertex needs framing 1"));
            }
            let mut h = g.local_complement(v)?;
            let lv = h.label(v);
            h.set_label(v, Label::new(lv.framing, -lv.sign));
            for t in g.neighbors(v) {
                let lt = h.label(t);
                h.set_label(t, Label::new(!lt.framing, lt.sign));
            }
            Ok(h)
        }
        _ => unreachable!("family checked above"),
    }
}

fn o3_pattern(l: &LoopedGraph, u: usize, v: usize, w: usize) -> std::result::Result<(), &'static str> {
    if !l.is_looped(v) || l.is_looped(w) {
        return Err("v must be looped and w unlooped");
    }
    let open = l.adjacent(v, w) && !l.adjacent(u, v) && !l.adjacent(u, w);
    let closed = !l.adjacent(v, w) && l.adjacent(u, v) && l.adjacent(u, w);
    if !open && !closed {
        return Err("triple must be either {vw} or {uv, uw}");
    }
    for x in 0..l.len() {
        if x == u || x == v || x == w {
            continue;
        }
        let k = [u, v, w].iter().filter(|&&t| l.adjacent(x, t)).count();
        if k != 0 && k != 2 {
            return Err("an outside vertex is adjacent to 1 or 3 of u, v, w");
        }
    }
    Ok(())
}

/// Applies a looped-graph move. Added vertices are appended in descriptor order.
pub fn apply_loop_move(l: &LoopedGraph, m: &Move) -> Result<LoopedGraph> {
    check_family(m, false)?;
    match m {
        Move::O1Remove { v } => {
            let i = l.index_of(v)?;
            if !l.is_isolated(i) {
                return Err(m.not_applicable("vertex is not isolated"));
            }
            Ok(l.remove_vertices(&[i]))
        }
        Move::O1Add { v, looped } => {
            let mut h = l.clone();
            h.add_vertex(v.clone(), *looped)?;
            Ok(h)
        }
        Move::O2Remove { a, b } => {
            let idx = lookup(l, &[a, b])?;
            let (i, j) = (idx[0], idx[1]);
            if l.is_looped(i) == l.is_looped(j) {
                return Err(m.not_applicable("exactly one of the two vertices must be looped"));
            }
            if !outside_equal(l, i, j) {
                return Err(m.not_applicable("the two vertices have different outside neighbourhoods"));
            }
            Ok(l.remove_vertices(&[i, j]))
        }
        Move::O2Add { a, b, adjacent, nbrs } => {
            if a == b {
                return Err(Error::SameVertex(a.clone()));
            }
            let mut h = l.clone();
            let i = h.add_vertex(a.clone(), true)?;
            let j = h.add_vertex(b.clone(), false)?;
            attach(&mut h, i, nbrs, m)?;
            attach(&mut h, j, nbrs, m)?;
            h.set_edge(i, j, *adjacent);
            Ok(h)
        }
        Move::O3 { u, v, w } => {
            let idx = lookup(l, &[u, v, w])?;
            let (u, v, w) = (idx[0], idx[1], idx[2]);
            o3_pattern(l, u, v, w).map_err(|r| m.not_applicable(r))?;
            let mut h = l.clone();
            h.toggle_edge(u, v);
            h.toggle_edge(u, w);
            h.toggle_edge(v, w);
            Ok(h)
        }
        _ => unreachable!("family checked above"),
    }
}

/// Every applicable removal and in-place graph-move from the given families.
pub fn list_graph_moves(g: &LabeledGraph, families: &[Family]) -> Vec<Move> {
    let n = g.len();
    let name = |i: usize| g.name(i).to_string();
    let mut out = Vec::new();
    if families.contains(&Family::Og1) {
        for i in 0..n {
            if g.is_isolated(i) && !g.label(i).framing {
                out.push(Move::Og1Remove { v: name(i) });
            }
        }
    }
    if families.contains(&Family::Og2) {
        for i in 0..n {
            for j in i + 1..n {
                if og2_pair_ok(g.adjacent(i, j), g.label(i), g.label(j)) && outside_equal(g, i, j) {
                    out.push(Move::Og2Remove { a: name(i), b: name(j) });
                }
            }
        }
    }
    if families.contains(&Family::Og3) {
        for u in 0..n {
            if g.label(u) == MINUS0 && g.degree(u) == 2 {
                let nb = g.neighbors(u);
                if og3_forward_ok(g, u, nb[0], nb[1]).is_ok() {
                    out.push(Move::Og3 { dir: Direction::Forward, u: name(u), v: name(nb[0]), w: name(nb[1]) });
                }
            }
        }
        for u in 0..n {
            if g.label(u) != MINUS0 {
                continue;
            }
            for v in 0..n {
                for w in v + 1..n {
                    if u != v && u != w && og3_inverse_ok(g, u, v, w).is_ok() {
                        out.push(Move::Og3 { dir: Direction::Inverse, u: name(u), v: name(v), w: name(w) });
                    }
                }
            }
        }
    }
    if families.contains(&Family::Og4) {
        for (u, v) in g.edges() {
            if !g.label(u).framing && !g.label(v).framing {
                out.push(Move::Og4 { u: name(u), v: name(v) });
            }
        }
    }
    if families.contains(&Family::Og4Prime) {
        for v in 0..n {
            if g.label(v).framing {
                out.push(Move::Og4Prime { v: name(v) });
            }
        }
    }
    out
}

/// Every applicable removal and `Ω3` move from the given families.
pub fn list_loop_moves(l: &LoopedGraph, families: &[Family]) -> Vec<Move> {
    let n = l.len();
    let name = |i: usize| l.name(i).to_string();
    let mut out = Vec::new();
    if families.contains(&Family::O1) {
        for i in 0..n {
            if l.is_isolated(i) {
                out.push(Move::O1Remove { v: name(i) });
            }
        }
    }
    if families.contains(&Family::O2) {
        for i in 0..n {
            for j in i + 1..n {
                if l.is_looped(i) != l.is_looped(j) && outside_equal(l, i, j) {
                    out.push(Move::O2Remove { a: name(i), b: name(j) });
                }
            }
        }
    }
    if families.contains(&Family::O3) {
        for v in (0..n).filter(|&v| l.is_looped(v)) {
            for w in (0..n).filter(|&w| !l.is_looped(w)) {
                for u in 0..n {
                    if u != v && u != w && o3_pattern(l, u, v, w).is_ok() {
                        out.push(Move::O3 { u: name(u), v: name(v), w: name(w) });
                    }
                }
            }
        }
    }
    out
}

fn neighbour_names<L: VertexLabel>(g: &Graph<L>, i: usize, skip: usize) -> Vec<String> {
    g.neighbors(i).into_iter().filter(|&t| t != skip).map(|t| g.name(t).to_string()).collect()
}

/// Descriptor undoing `m`, which must be applicable to `before`.
pub fn inverse_graph_move(before: &LabeledGraph, m: &Move) -> Result<Move> {
    apply_graph_move(before, m)?;
    Ok(match m {
        Move::Og1Remove { v } => Move::Og1Add { v: v.clone(), label: before.label(before.index_of(v)?) },
        Move::Og1Add { v, .. } => Move::Og1Remove { v: v.clone() },
        Move::Og2Remove { a, b } => {
            let (i, j) = (before.index_of(a)?, before.index_of(b)?);
            Move::Og2Add {
                a: a.clone(),
                la: before.label(i),
                b: b.clone(),
                lb: before.label(j),
                adjacent: before.adjacent(i, j),
                nbrs: neighbour_names(before, i, j),
            }
        }
        Move::Og2Add { a, b, .. } => Move::Og2Remove { a: a.clone(), b: b.clone() },
        Move::Og3 { dir, u, v, w } => {
            let dir = if *dir == Direction::Forward { Direction::Inverse } else { Direction::Forward };
            Move::Og3 { dir, u: u.clone(), v: v.clone(), w: w.clone() }
        }
        Move::Og4 { .. } | Move::Og4Prime { .. } => m.clone(),
        _ => unreachable!("apply_graph_move rejects loop moves"),
    })
}

/// Descriptor undoing `m`, which must be applicable to `before`.
pub fn inverse_loop_move(before: &LoopedGraph, m: &Move) -> Result<Move> {
    apply_loop_move(before, m)?;
    Ok(match m {
        Move::O1Remove { v } => Move::O1Add { v: v.clone(), looped: before.is_looped(before.index_of(v)?) },
        Move::O1Add { v, .. } => Move::O1Remove { v: v.clone() },
        Move::O2Remove { a, b } => {
            let (i, j) = (before.index_of(a)?, before.index_of(b)?);
            let (lp, un) = if before.is_looped(i) { (i, j) } else { (j, i) };
            Move::O2Add {
                a: before.name(lp).to_string(),
                b: before.name(un).to_string(),
                adjacent: before.adjacent(i, j),
                nbrs: neighbour_names(before, i, j),
            }
        }
        Move::O2Add { a, b, .. } => Move::O2Remove { a: a.clone(), b: b.clone() },
        Move::O3 { .. } => m.clone(),
        _ => unreachable!("apply_loop_move rejects graph moves"),
    })
}
