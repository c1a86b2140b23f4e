//! Labeled simple graphs with bit-packed adjacency rows.
//!
//! Vertices are dense integers `0..n`. The adjacency relation is symmetric
//! and irreflexive. Potential edges are indexed in a single fixed
//! lexicographic order over pairs `(u, v)` with `u < v`; the sampler and the
//! exhaustive enumerator both address edges through this order, which is what
//! makes sampling and enumeration byte-reproducible.

use std::fmt;

use thiserror::Error;

/// Largest `n` accepted by [`all_graphs`]: 2^21 graphs on 7 vertices.
pub const ENUMERATION_CAP: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}: simple graphs have no loops")]
    SelfLoop(usize),
    #[error("cannot enumerate graphs on {n} vertices (cap is n <= {cap})")]
    EnumerationTooLarge { n: usize, cap: usize },
    #[error("edge mask for n = {n} needs {required} bits, more than the 64 available")]
    MaskTooWide { n: usize, required: usize },
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Number of potential edges on `n` vertices, `C(n, 2)`.
pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `(u, v)`, `u < v`, in the fixed lexicographic edge
/// order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
pub fn edge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// All potential edges of an `n`-vertex graph in the fixed lexicographic
/// order; the inverse of [`edge_index`].
pub fn edge_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// A subset of the vertices `0..n`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            assert!(v < n, "vertex {v} out of range for VertexSet on {n}");
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(n));
        VertexSet { n, words }
    }

    /// Size of the ambient vertex range, not the member count.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A labeled simple graph on vertices `0..n`.
///
/// Immutable after construction; all operations are pure, so values can be
/// shared freely across threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    row_words: usize,
    bits: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let row_words = words_for(n);
        Graph {
            n,
            row_words,
            bits: vec![0; n * row_words],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edge_pairs(n) {
            g.set_edge(u, v);
        }
        g
    }

    /// Builds a graph from an edge list. Duplicate edges and both
    /// orientations of a pair collapse to a single edge.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !g.has_edge(u, v) {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Builds a graph from a packed edge mask: bit `i` of `mask` is the
    /// presence of edge `i` in the lexicographic order of [`edge_pairs`].
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let m = max_edges(n);
        if m > 64 {
            return Err(GraphError::MaskTooWide { n, required: m });
        }
        let mut g = Graph::empty(n);
        for (i, (u, v)) in edge_pairs(n).enumerate() {
            if mask >> i & 1 == 1 {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_edge_mask`]; `None` when `C(n,2) > 64`.
    pub fn to_edge_mask(&self) -> Option<u64> {
        if max_edges(self.n) > 64 {
            return None;
        }
        let mut mask = 0u64;
        for (i, (u, v)) in edge_pairs(self.n).enumerate() {
            if self.has_edge(u, v) {
                mask |= 1 << i;
            }
        }
        Some(mask)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        debug_assert!(!self.has_edge(u, v));
        self.bits[u * self.row_words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.row_words + u / 64] |= 1 << (u % 64);
        self.edge_count += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == max_edges(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        u != v && self.bits[u * self.row_words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Adjacency row of `v` as bitset words.
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        assert!(v < self.n, "vertex out of range");
        &self.bits[v * self.row_words..(v + 1) * self.row_words]
    }

    /// The link lk(v): all vertices adjacent to `v`. Never contains `v`.
    pub fn link(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    /// The star st(v) = lk(v) ∪ {v}.
    pub fn star(&self, v: usize) -> VertexSet {
        let mut s = self.link(v);
        s.insert(v);
        s
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in edge_pairs(self.n) {
            if !self.has_edge(u, v) {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Subgraph induced on `keep`. Vertices are relabeled densely; the
    /// returned map sends each new index to its original vertex.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        assert_eq!(keep.universe(), self.n);
        let old_of_new: Vec<usize> = keep.iter().collect();
        let mut g = Graph::empty(old_of_new.len());
        for (a, &u) in old_of_new.iter().enumerate() {
            for (b, &v) in old_of_new.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(a, b);
                }
            }
        }
        (g, old_of_new)
    }

    /// Connected components as vertex sets, ordered by smallest member.
    /// The 0-vertex graph has no components.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::empty(self.n);
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let comp = self.flood_from(start, None);
            for v in comp.iter() {
                seen.insert(v);
            }
            components.push(comp);
        }
        components
    }

    /// BFS closure of `start`, optionally restricted to vertices in `within`.
    pub(crate) fn flood_from(&self, start: usize, within: Option<&[u64]>) -> VertexSet {
        let mut comp = VertexSet::empty(self.n);
        comp.insert(start);
        let mut frontier = vec![start];
        while let Some(u) = frontier.pop() {
            let row = self.row(u);
            for wi in 0..self.row_words {
                let mut fresh = row[wi] & !comp.words[wi];
                if let Some(mask) = within {
                    fresh &= mask[wi];
                }
                while fresh != 0 {
                    let b = fresh.trailing_zeros() as usize;
                    fresh &= fresh - 1;
                    let v = wi * 64 + b;
                    comp.insert(v);
                    frontier.push(v);
                }
            }
        }
        comp
    }

    /// Component count restricted to the vertices of `mask`; 0 when `mask`
    /// is empty.
    pub(crate) fn component_count_within(&self, mask: &[u64]) -> usize {
        let mut remaining: Vec<u64> = mask.to_vec();
        let mut count = 0;
        loop {
            let Some((wi, &w)) = remaining.iter().enumerate().find(|(_, &w)| w != 0) else {
                return count;
            };
            let start = wi * 64 + w.trailing_zeros() as usize;
            let comp = self.flood_from(start, Some(mask));
            for (r, c) in remaining.iter_mut().zip(comp.words()) {
                *r &= !c;
            }
            count += 1;
        }
    }

    /// Connectedness with the convention that graphs on 0 or 1 vertices are
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        edge_pairs(self.n)
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    /// Image of the graph under a vertex relabeling: edge (u, v) becomes
    /// (perm[u], perm[v]). `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Deterministic enumeration of every labeled graph on `n` vertices, in
/// increasing edge-mask order (2^C(n,2) graphs in total).
pub fn all_graphs(n: usize) -> Result<AllGraphs, GraphError> {
    if n > ENUMERATION_CAP {
        return Err(GraphError::EnumerationTooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(AllGraphs {
        n,
        next: 0,
        total: 1u64 << max_edges(n),
    })
}

/// Number of labeled graphs on `n` vertices, `2^C(n,2)`.
pub fn labeled_graph_count(n: usize) -> u64 {
    1u64 << max_edges(n)
}

pub struct AllGraphs {
    n: usize,
    next: u64,
    total: u64,
}

impl Iterator for AllGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.total {
            return None;
        }
        let g = Graph::from_edge_mask(self.n, self.next).expect("cap keeps masks in range");
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for AllGraphs {}
