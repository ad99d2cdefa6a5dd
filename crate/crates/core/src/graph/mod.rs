//! Immutable undirected simple graphs on dense vertex indices.

mod io;
mod products;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub use products::{bipartite_double, induced_subgraph, tensor_product, Induced};

/// Graphs up to this many vertices also carry a bitset adjacency matrix.
pub const BITSET_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("common neighbour count needs two distinct vertices, got {vertex} twice")]
    SameVertex { vertex: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug)]
struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(adjacency: &[Vec<usize>]) -> Self {
        let n = adjacency.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (u, nbrs) in adjacency.iter().enumerate() {
            for &v in nbrs {
                bits[u * words + v / 64] |= 1u64 << (v % 64);
            }
        }
        BitRows { words, bits }
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

/// An undirected simple graph with sorted neighbour lists.
#[derive(Clone, Debug)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    rows: Option<BitRows>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency && self.labels == other.labels
    }
}

impl Eq for Graph {}

/// The two colour classes of a 2-colouring, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub u: Vec<usize>,
    pub w: Vec<usize>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Ok(Self::from_adjacency(adjacency))
    }

    /// Builds the graph on `0..n` whose edges are the pairs `u < v` with
    /// `adjacent(u, v)`.
    pub fn from_predicate<F>(n: usize, mut adjacent: F) -> Self
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut adjacency = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    adjacency[u].push(v);
                    adjacency[v].push(u);
                }
            }
        }
        Self::from_adjacency(adjacency)
    }

    /// `adjacency` must already be symmetric, loop-free and sorted.
    pub(crate) fn from_adjacency(adjacency: Vec<Vec<usize>>) -> Self {
        debug_assert!(adjacency
            .iter()
            .enumerate()
            .all(|(u, nb)| nb.windows(2).all(|w| w[0] < w[1]) && !nb.contains(&u)));
        let rows = (adjacency.len() <= BITSET_LIMIT).then(|| BitRows::new(&adjacency));
        Graph {
            adjacency,
            rows,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount {
                expected: self.n(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|nb| nb.len() == d).then_some(d)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(rows) => rows.get(u, v),
            None => self.adjacency[u].binary_search(&v).is_ok(),
        }
    }

    /// Edges `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// A pair of distinct vertices with equal neighbourhoods, if any.
    pub fn vd_witness(&self) -> Option<(usize, usize)> {
        let mut first: HashMap<&[usize], usize> = HashMap::with_capacity(self.n());
        for (v, nb) in self.adjacency.iter().enumerate() {
            if let Some(&u) = first.get(nb.as_slice()) {
                return Some((u, v));
            }
            first.insert(nb.as_slice(), v);
        }
        None
    }

    /// True iff distinct vertices always have distinct neighbourhoods.
    pub fn is_vd(&self) -> bool {
        self.vd_witness().is_none()
    }

    /// Component index for each vertex; components are numbered in order of
    /// their least vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.n() {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = next;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Side (0 or 1) of every vertex in a BFS 2-colouring where each
    /// component root gets side 0; `Err` carries an edge inside one side.
    fn two_colouring(&self) -> Result<Vec<u8>, (usize, usize)> {
        let mut side = vec![u8::MAX; self.n()];
        let mut queue = VecDeque::new();
        for root in 0..self.n() {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return Err((u, v));
                    }
                }
            }
        }
        Ok(side)
    }

    pub fn bipartition(&self) -> Option<Bipartition> {
        let side = self.two_colouring().ok()?;
        let (u, w): (Vec<usize>, Vec<usize>) = (0..self.n()).partition(|&v| side[v] == 0);
        Some(Bipartition { u, w })
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_ok()
    }

    pub fn has_odd_cycle(&self) -> bool {
        !self.is_bipartite()
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Shortest-path length, `None` when `v` and `w` lie in different
    /// components.
    pub fn distance(&self, v: usize, w: usize) -> Result<Option<usize>, GraphError> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        Ok(self.distances_from(v)[w])
    }

    /// `|N(v) ∩ N(w)|` for distinct `v`, `w`.
    pub fn common_neighbor_count(&self, v: usize, w: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w {
            return Err(GraphError::SameVertex { vertex: v });
        }
        Ok(self.common_neighbors_unchecked(v, w))
    }

    #[inline]
    pub(crate) fn common_neighbors_unchecked(&self, v: usize, w: usize) -> usize {
        match &self.rows {
            Some(rows) => rows
                .row(v)
                .iter()
                .zip(rows.row(w))
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum(),
            None => {
                let (a, b) = (&self.adjacency[v], &self.adjacency[w]);
                let (mut i, mut j, mut c) = (0, 0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            c += 1;
                            i += 1;
                            j += 1;
                        }
                    }
                }
                c
            }
        }
    }

    /// True iff `images` maps edges onto edges.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        images.len() == self.n()
            && self.adjacency.iter().enumerate().all(|(u, nb)| {
                self.adjacency[images[u]].len() == nb.len()
                    && nb.iter().all(|&v| self.adjacent(images[u], images[v]))
            })
    }
}
