//! Finite simple undirected graphs and the elementary quantities the rest of
//! the toolkit is built on: degrees, minimum degree, minimum degree-sum over
//! nonadjacent pairs, components, diameter, vertex deletion and contraction.
//!
//! Vertices are dense ids `0..n`. Edges are stored once, as `(u, v)` with
//! `u < v`, in lexicographic order; an edge's position in that order is its
//! [`EdgeId`]. All derived structures are deterministic.

mod edgelist;
mod graph6;

pub use edgelist::{parse_edge_list, to_edge_list};
pub use graph6::{parse_graph6, to_graph6};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an edge in the lexicographically sorted edge list of a graph.
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set does not induce a connected subgraph")]
    SetNotConnected,
}

/// Error produced by the text parsers, positioned either by byte offset
/// (graph6) or by line number (edge lists).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("graph6: {message} at byte offset {offset}")]
    Graph6 { offset: usize, message: String },
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

/// Finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `adj[v]` holds `(neighbor, edge id)` sorted by neighbor.
    adj: Vec<Vec<(usize, EdgeId)>>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge iterator. Endpoint order within a pair does
    /// not matter; loops, duplicates and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// `edges` must be sorted, deduplicated, loop-free and in range.
    fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Like [`Graph::from_edges`] but silently merges duplicates and drops
    /// loops. Used by contraction.
    fn simplified<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<_> = edges
            .into_iter()
            .filter(|&(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted_unique(n, list)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_unique(n, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each as `(u, v)` with `u < v`.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbor, edge id)` pairs of `v`, ascending by neighbor.
    #[inline]
    pub fn incident(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Unweighted shortest-path distances from `source`.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn check_vertices(&self, set: &[usize]) -> Result<(), GraphError> {
        match set.iter().find(|&&v| v >= self.n) {
            Some(&vertex) => Err(GraphError::VertexOutOfRange { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// Minimum degree and minimum degree-sum over nonadjacent pairs.
    pub fn degree_stats(&self) -> DegreeStats {
        let delta = self.min_degree();
        let mut sigma2: Option<usize> = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    let s = self.degree(u) + self.degree(v);
                    sigma2 = Some(sigma2.map_or(s, |cur| cur.min(s)));
                }
            }
        }
        DegreeStats { delta, sigma2 }
    }

    /// Connected components, blocks ordered by their minimum vertex id and
    /// each block sorted ascending.
    pub fn components(&self) -> ComponentPartition {
        let mut block_of = vec![usize::MAX; self.n];
        let mut blocks = Vec::new();
        for start in 0..self.n {
            if block_of[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            block_of[start] = id;
            let mut head = 0;
            while head < block.len() {
                let u = block[head];
                head += 1;
                for w in self.neighbors(u) {
                    if block_of[w] == usize::MAX {
                        block_of[w] = id;
                        block.push(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        ComponentPartition { blocks, block_of }
    }

    /// Induced subgraph on `V \ removed`. Surviving vertices keep their
    /// relative order; the returned map sends new ids to original ids.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_vertices(removed)?;
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        let kept: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        Ok((self.induced(&kept), kept))
    }

    /// Subgraph induced by `vertices` (sorted ascending, distinct, in range);
    /// vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (local[u], local[v]);
                (a != usize::MAX && b != usize::MAX).then(|| (a.min(b), a.max(b)))
            })
            .collect();
        edges.sort_unstable();
        Self::from_sorted_unique(vertices.len(), edges)
    }

    /// Contracts the connected vertex set `set` into one vertex. The merged
    /// vertex takes the rank of `min(set)` among the surviving vertices, so
    /// the relative order of everything else is preserved.
    pub fn contract_set(&self, set: &[usize]) -> Result<ContractionResult, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptySet);
        }
        self.check_vertices(set)?;
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut members: Vec<usize> = set.to_vec();
        members.sort_unstable();
        members.dedup();
        let sub = self.induced(&members);
        if !sub.is_connected() {
            return Err(GraphError::SetNotConnected);
        }
        let rep = members[0];
        let mut origin_map = vec![0; self.n];
        let mut next = 0;
        let mut merged_vertex = 0;
        for v in 0..self.n {
            if v == rep {
                merged_vertex = next;
            }
            if !inside[v] || v == rep {
                origin_map[v] = next;
                next += 1;
            }
        }
        for &v in &members {
            origin_map[v] = merged_vertex;
        }
        let graph = Self::simplified(
            next,
            self.edges
                .iter()
                .map(|&(u, v)| (origin_map[u], origin_map[v])),
        );
        Ok(ContractionResult {
            graph,
            merged_vertex,
            origin_map,
        })
    }

    /// Largest shortest-path distance over all vertex pairs.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs_distances(s) {
                best = best.max(d.ok_or(GraphError::Disconnected)?);
            }
        }
        Ok(best)
    }
}

/// Minimum degree δ and minimum nonadjacent degree-sum σ₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub delta: usize,
    /// `None` exactly when the graph is complete (no nonadjacent pair).
    pub sigma2: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionResult {
    pub graph: Graph,
    pub merged_vertex: usize,
    /// Original vertex -> vertex of the contracted graph.
    pub origin_map: Vec<usize>,
}
