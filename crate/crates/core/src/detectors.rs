//! Graph predicates with group-theoretic meaning: empty squares (induced
//! 4-cycles), domination pairs (transvections), separating stars (partial
//! conjugations), and product-split predicates.
//!
//! Empty squares are found by scanning non-adjacent *diagonal pairs* rather
//! than 4-subsets or ordered 4-tuples: for each non-edge {a, b}, every
//! non-adjacent pair inside the common neighborhood of a and b closes an
//! empty square with diagonals {a, b} and {c, d}. Each square is seen once
//! per diagonal, so the scan counts every square exactly twice. The ordered
//! 4-tuple statistic is 8 per square (the reflections of the square).

use serde::Serialize;

use crate::graph::{max_edges, Graph, VertexSet};

/// An empty square in diagonal-pair form: sides v1w1, v1w2, v2w1, v2w2 are
/// present, diagonals v1v2 and w1w2 are absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub v1: usize,
    pub v2: usize,
    pub w1: usize,
    pub w2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmptySquareReport {
    /// Empty squares counted once each (a square = a 4-set together with its
    /// unique valid diagonal split).
    pub unordered_count: u64,
    /// The ordered 4-tuple statistic: 8 per square.
    pub ordered_tuple_count: u64,
    /// One witness square when any exists.
    pub witness: Option<SquareWitness>,
}

/// Collects the common neighbors of `a` and `b`.
fn common_neighbors(g: &Graph, a: usize, b: usize, scratch: &mut Vec<usize>) {
    scratch.clear();
    let (ra, rb) = (g.row(a), g.row(b));
    for wi in 0..ra.len() {
        let mut w = ra[wi] & rb[wi];
        while w != 0 {
            scratch.push(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
}

pub fn count_empty_squares(g: &Graph) -> EmptySquareReport {
    let n = g.n();
    let mut doubled = 0u64;
    let mut witness = None;
    let mut common = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            common_neighbors(g, a, b, &mut common);
            for (i, &c) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if !g.has_edge(c, d) {
                        doubled += 1;
                        witness.get_or_insert(SquareWitness {
                            v1: a,
                            v2: b,
                            w1: c,
                            w2: d,
                        });
                    }
                }
            }
        }
    }
    EmptySquareReport {
        unordered_count: doubled / 2,
        ordered_tuple_count: doubled * 4,
        witness,
    }
}

/// Early-exit form of [`count_empty_squares`] for Monte Carlo loops.
pub fn has_empty_square(g: &Graph) -> bool {
    let n = g.n();
    let mut common = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            common_neighbors(g, a, b, &mut common);
            for (i, &c) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if !g.has_edge(c, d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Ordered pairs (v, w), v != w, with lk(v) ⊆ st(w). Containment is
/// inclusive: each such pair permits the transvection v ↦ vw.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationReport {
    pub pairs: Vec<(usize, usize)>,
}

fn dominates(g: &Graph, v: usize, w: usize) -> bool {
    // lk(v) \ {w} ⊆ lk(w)
    let (rv, rw) = (g.row(v), g.row(w));
    let (wi, bit) = (w / 64, 1u64 << (w % 64));
    rv.iter()
        .zip(rw)
        .enumerate()
        .all(|(i, (a, b))| a & !(b | if i == wi { bit } else { 0 }) == 0)
}

pub fn domination_pairs(g: &Graph) -> DominationReport {
    let n = g.n();
    let mut pairs = Vec::new();
    for v in 0..n {
        for w in 0..n {
            if v != w && dominates(g, v, w) {
                pairs.push((v, w));
            }
        }
    }
    DominationReport { pairs }
}

pub fn has_domination_pair(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|v| (0..n).any(|w| v != w && dominates(g, v, w)))
}

/// A separator vertex together with one witnessing bipartition: S and T
/// partition the vertices of Γ∖st(v), both nonempty, with no S–T edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorWitness {
    pub vertex: usize,
    pub side_s: VertexSet,
    pub side_t: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingStarReport {
    /// Vertices v for which Γ∖st(v) has at least two components.
    pub separators: Vec<usize>,
    /// One (S, T) witness per separator, in the same order.
    pub witnesses: Vec<SeparatorWitness>,
}

fn star_complement_words(g: &Graph, v: usize) -> (Vec<u64>, bool) {
    let n = g.n();
    let full = VertexSet::full(n);
    let rest: Vec<u64> = full
        .words()
        .iter()
        .zip(g.star(v).words())
        .map(|(f, s)| f & !s)
        .collect();
    let nonempty = rest.iter().any(|&w| w != 0);
    (rest, nonempty)
}

/// Splits Γ∖st(v) into (first component, remainder) when disconnected.
fn try_split_star_complement(g: &Graph, v: usize) -> Option<(VertexSet, VertexSet)> {
    let (rest, nonempty) = star_complement_words(g, v);
    if !nonempty {
        return None;
    }
    let start = rest
        .iter()
        .enumerate()
        .find_map(|(wi, &w)| (w != 0).then(|| wi * 64 + w.trailing_zeros() as usize))
        .unwrap();
    let side_s = g.flood_from(start, Some(&rest));
    let t_words: Vec<u64> = rest
        .iter()
        .zip(side_s.words())
        .map(|(r, s)| r & !s)
        .collect();
    if t_words.iter().all(|&w| w == 0) {
        return None;
    }
    Some((side_s, VertexSet::from_words(g.n(), t_words)))
}

pub fn separating_stars(g: &Graph) -> SeparatingStarReport {
    let mut separators = Vec::new();
    let mut witnesses = Vec::new();
    for v in 0..g.n() {
        if let Some((side_s, side_t)) = try_split_star_complement(g, v) {
            separators.push(v);
            witnesses.push(SeparatorWitness {
                vertex: v,
                side_s,
                side_t,
            });
        }
    }
    SeparatingStarReport {
        separators,
        witnesses,
    }
}

/// True iff Γ∖st(v) is connected (or empty) for every vertex v.
pub fn is_star_two_connected(g: &Graph) -> bool {
    (0..g.n()).all(|v| try_split_star_complement(g, v).is_none())
}

/// Number of ordered witnesses (v, S, T): over each vertex v whose star
/// complement has m ≥ 1 components, the nonempty no-crossing-edge
/// bipartitions number 2^m - 2.
pub fn separating_witness_count(g: &Graph) -> f64 {
    let mut total = 0.0;
    for v in 0..g.n() {
        let (rest, nonempty) = star_complement_words(g, v);
        if !nonempty {
            continue;
        }
        let m = g.component_count_within(&rest) as i32;
        total += (2.0_f64.powi(m) - 2.0).max(0.0);
    }
    total
}

/// The three product-split predicates of a graph: whether the graph is
/// disconnected (free product), whether its complement is disconnected
/// (direct product), and whether it is complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitPredicates {
    pub graph_disconnected: bool,
    pub complement_disconnected: bool,
    pub graph_complete: bool,
}

pub fn split_predicates(g: &Graph) -> SplitPredicates {
    SplitPredicates {
        graph_disconnected: !g.is_connected(),
        complement_disconnected: !g.complement().is_connected(),
        graph_complete: g.edge_count() == max_edges(g.n()),
    }
}

/// Full detector report in the shape emitted by the `analyze` command.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub edges: usize,
    pub empty_squares: u64,
    pub ordered_tuples: u64,
    pub domination_pairs: usize,
    pub separators: Vec<usize>,
    pub graph_disconnected: bool,
    pub complement_disconnected: bool,
    pub complete: bool,
}

pub fn analyze(g: &Graph) -> AnalyzeReport {
    let squares = count_empty_squares(g);
    let splits = split_predicates(g);
    AnalyzeReport {
        n: g.n(),
        edges: g.edge_count(),
        empty_squares: squares.unordered_count,
        ordered_tuples: squares.ordered_tuple_count,
        domination_pairs: domination_pairs(g).pairs.len(),
        separators: separating_stars(g).separators,
        graph_disconnected: splits.graph_disconnected,
        complement_disconnected: splits.complement_disconnected,
        complete: splits.graph_complete,
    }
}
