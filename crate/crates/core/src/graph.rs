//! Simple undirected graphs with canonical edge identities.
//!
//! Edges are stored once, as `(u, v)` with `u < v`, sorted lexicographically.
//! The position of an edge in that order is its *edge index*; every other
//! module (colourings, decompositions, edge sets) is keyed on it. Adjacency
//! lists are sorted by neighbour, so all iteration orders are deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical undirected edge, `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId {
    pub u: usize,
    pub v: usize,
}

impl EdgeId {
    /// Canonicalises an unordered pair. Loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(EdgeId { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(EdgeId { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::Loop(a)),
        }
    }

    pub fn has_endpoint(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    /// The endpoint that is not `w`. `w` must be an endpoint.
    pub fn other(&self, w: usize) -> usize {
        debug_assert!(self.has_endpoint(w));
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_endpoint(&self, other: &EdgeId) -> bool {
        self.has_endpoint(other.u) || self.has_endpoint(other.v)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// How repeated pairs are treated by [`Graph::from_edge_list_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Duplicates {
    #[default]
    Reject,
    Merge,
}

/// An immutable simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<EdgeId>,
    /// `adj[v]` holds `(neighbour, edge index)`, sorted by neighbour.
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range ids and duplicate pairs.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_edge_list_with(n, pairs, Duplicates::Reject)
    }

    pub fn from_edge_list_with(
        n: usize,
        pairs: &[(usize, usize)],
        duplicates: Duplicates,
    ) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            for w in [a, b] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            edges.push(EdgeId::new(a, b)?);
        }
        edges.sort_unstable();
        let before = edges.len();
        if duplicates == Duplicates::Reject {
            if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(w[0]));
            }
        } else {
            edges.dedup();
        }
        debug_assert!(duplicates == Duplicates::Merge || edges.len() == before);
        Ok(Self::from_sorted_edges(n, edges))
    }

    /// `edges` must be canonical, sorted and free of duplicates.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<EdgeId>) -> Self {
        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut adj: Vec<Vec<(usize, usize)>> =
            degree.iter().map(|&d| Vec::with_capacity(d)).collect();
        // Pushing in edge order keeps each list sorted by neighbour: for a
        // fixed w, edges (x, w) with x < w come first in increasing x, then
        // edges (w, y) in increasing y.
        for (idx, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, idx));
            adj[e.v].push((e.u, idx));
        }
        Graph { n, edges, adj }
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| EdgeId { u, v }))
            .collect();
        Self::from_sorted_edges(n, edges)
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edge_list(n, &pairs).expect("cycle is simple")
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edge_list(n, &pairs).expect("path is simple")
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edge_list(leaves + 1, &pairs).expect("star is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> EdgeId {
        self.edges[idx]
    }

    /// `(neighbour, edge index)` pairs at `v`, sorted by neighbour.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    /// Degree without the range check; panics on an invalid vertex.
    pub fn deg(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).min().ok_or(Error::EmptyGraph)
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).max().ok_or(Error::EmptyGraph)
    }

    /// Δ(G), with 0 for the graph without vertices.
    pub fn max_degree_or_zero(&self) -> usize {
        self.max_degree().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n || u == v {
            return None;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a]
            .binary_search_by_key(&b, |&(w, _)| w)
            .ok()
            .map(|pos| self.adj[a][pos].1)
    }

    pub fn index_of(&self, e: EdgeId) -> Result<usize> {
        self.edge_index(e.u, e.v).ok_or(Error::NotAnEdge(e))
    }

    /// Indices of the edges sharing an endpoint with edge `idx`, excluding it.
    pub fn open_neighbourhood_indices(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        let e = self.edges[idx];
        self.adj[e.u]
            .iter()
            .chain(self.adj[e.v].iter())
            .map(|&(_, f)| f)
            .filter(move |&f| f != idx)
    }

    /// E_G(uv): edges sharing at least one endpoint with `e`, excluding `e`.
    pub fn open_edge_neighbourhood(&self, e: EdgeId) -> Result<EdgeSet> {
        let idx = self.index_of(e)?;
        Ok(EdgeSet::from_indices(self, self.open_neighbourhood_indices(idx)))
    }

    /// An edge is non-isolated when its open neighbourhood is nonempty.
    pub fn is_non_isolated(&self, idx: usize) -> bool {
        let e = self.edges[idx];
        self.adj[e.u].len() + self.adj[e.v].len() > 2
    }

    /// Spanning subgraph with edge set `set`. The subgraph's edge `j` is the
    /// parent edge `set.indices()[j]`.
    pub fn subgraph_from_edges(&self, set: &EdgeSet) -> Result<Graph> {
        if set.universe() != self.edge_count() {
            return Err(Error::ForeignEdgeSet(format!(
                "set over {} edges, graph has {}",
                set.universe(),
                self.edge_count()
            )));
        }
        let edges = set.indices().iter().map(|&i| self.edges[i]).collect();
        Ok(Self::from_sorted_edges(self.n, edges))
    }

    /// `d_{E'}(v)`: number of edges of `set` at `v`.
    pub fn degree_in(&self, set: &EdgeSet, v: usize) -> usize {
        self.adj[v].iter().filter(|&&(_, f)| set.contains(f)).count()
    }

    /// `d_{E'}(v)` for every vertex.
    pub fn degrees_in(&self, set: &EdgeSet) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &f in set.indices() {
            let e = self.edges[f];
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }
}

/// A subset of the edges of one graph, stored by edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl EdgeSet {
    pub fn empty(graph: &Graph) -> Self {
        EdgeSet { mask: vec![false; graph.edge_count()], members: Vec::new() }
    }

    pub fn all(graph: &Graph) -> Self {
        EdgeSet { mask: vec![true; graph.edge_count()], members: (0..graph.edge_count()).collect() }
    }

    /// Out-of-range indices panic; duplicates are collapsed.
    pub fn from_indices(graph: &Graph, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; graph.edge_count()];
        for i in indices {
            mask[i] = true;
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        EdgeSet { mask, members }
    }

    pub fn from_edges(graph: &Graph, edges: &[EdgeId]) -> Result<Self> {
        let idx = edges.iter().map(|&e| graph.index_of(e)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(graph, idx))
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.mask.get(idx).copied().unwrap_or(false)
    }

    /// Member edge indices in increasing order.
    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn edge_ids<'g>(&'g self, graph: &'g Graph) -> impl Iterator<Item = EdgeId> + 'g {
        self.members.iter().map(move |&i| graph.edge(i))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of edges of the owning graph.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        assert_eq!(self.universe(), other.universe());
        Self::from_mask(self.mask.iter().zip(&other.mask).map(|(a, b)| *a || *b).collect())
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        assert_eq!(self.universe(), other.universe());
        Self::from_mask(self.mask.iter().zip(&other.mask).map(|(a, b)| *a && !*b).collect())
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        assert_eq!(self.universe(), other.universe());
        Self::from_mask(self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect())
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| !(*a && *b))
    }
}
