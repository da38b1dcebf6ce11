//! Simple undirected graphs on a small vertex set.
//!
//! Vertices are `0..n` in the API. Text formats, certificates and cycle
//! notation use 1-based labels.

mod build;
mod format;
mod name;
mod spectral;

pub use build::{
    build_circulant, build_semicirculant, cartesian_product, complement, complete, cycle,
    direct_product, disjoint_copies, distance_k_graph, edgeless, line_graph, path,
    CirculantSpec, SemicirculantSpec,
};
pub use format::{read_graph, write_graph};
pub use name::{build_named, named_aliases};
pub use spectral::{injective_f_check, product_spectra_conditions, spectrum, InjectiveF, ProductSpectra};

use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::fmt;

/// Immutable simple graph stored as a dense adjacency matrix.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("label", &self.label)
            .field("edges", &self.edges().iter().map(|&(a, b)| (a + 1, b + 1)).collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn edgeless(n: usize) -> Graph {
        Graph { n, adj: vec![false; n * n], label: None }
    }

    /// Builds a graph from 0-based edges. Repeated edges are merged, loops rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::edgeless(n);
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange(a + 1));
            }
            if b >= n {
                return Err(Error::VertexOutOfRange(b + 1));
            }
            if a == b {
                return Err(Error::Construction(format!("loop at vertex {}", a + 1)));
            }
            g.set_edge(a, b);
        }
        Ok(g)
    }

    /// Same as [`Graph::from_edges`] with 1-based labels.
    pub fn from_edges_1based(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut zero = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == 0 || b == 0 {
                return Err(Error::VertexOutOfRange(0));
            }
            zero.push((a - 1, b - 1));
        }
        Graph::from_edges(n, &zero)
    }

    pub(crate) fn set_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        self.adj[a * self.n + b] = true;
        self.adj[b * self.n + a] = true;
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&w| self.adjacent(v, w)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n].iter().filter(|&&x| x).count()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&x| x).count() / 2
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances().row(0).iter().all(|&d| d != INFINITE)
    }

    /// All-pairs hop distances by repeated BFS.
    pub fn distances(&self) -> DistanceMatrix {
        let n = self.n;
        let mut d = vec![INFINITE; n * n];
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| self.neighbours(v)).collect();
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &nbrs[v] {
                    if row[w] == INFINITE {
                        row[w] = row[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n, d }
    }

    pub fn common_neighbours(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        if a >= self.n {
            return Err(Error::VertexOutOfRange(a + 1));
        }
        if b >= self.n {
            return Err(Error::VertexOutOfRange(b + 1));
        }
        if a == b {
            return Err(Error::NotApplicable("common neighbours of a vertex with itself".into()));
        }
        Ok((0..self.n).filter(|&k| self.adjacent(a, k) && self.adjacent(b, k)).collect())
    }

    /// Number of common neighbours, with `cn_count(a, a) = degree(a)`.
    pub fn cn_count(&self, a: usize, b: usize) -> usize {
        (0..self.n).filter(|&k| self.adjacent(a, k) && self.adjacent(b, k)).count()
    }

    /// True iff some 4-cycle exists (induced or not), i.e. two distinct
    /// vertices share at least two neighbours.
    pub fn has_quadrangle(&self) -> bool {
        (0..self.n).any(|a| (a + 1..self.n).any(|b| self.cn_count(a, b) >= 2))
    }

    /// Image of the graph under a vertex relabeling `v -> image[v]`.
    pub fn relabeled(&self, image: &[usize]) -> Graph {
        let mut g = Graph::edgeless(self.n);
        for (a, b) in self.edges() {
            g.set_edge(image[a], image[b]);
        }
        g.label = self.label.clone();
        g
    }
}

pub const INFINITE: u32 = u32::MAX;

/// Hop-count matrix; [`INFINITE`] marks pairs in different components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn from_raw(n: usize, d: Vec<u32>) -> DistanceMatrix {
        assert_eq!(d.len(), n * n);
        DistanceMatrix { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.d[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.d[a * self.n..(a + 1) * self.n]
    }

    /// Largest finite distance, or `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<u32> {
        if self.d.contains(&INFINITE) {
            None
        } else {
            self.d.iter().copied().max()
        }
    }

    pub fn at_distance(&self, a: usize, k: u32) -> Vec<usize> {
        (0..self.n).filter(|&b| self.get(a, b) == k).collect()
    }

    /// Sorted multiset of distances from `a`; an isomorphism invariant of the vertex.
    pub fn profile(&self, a: usize) -> Vec<u32> {
        let mut p = self.row(a).to_vec();
        p.sort_unstable();
        p
    }
}
