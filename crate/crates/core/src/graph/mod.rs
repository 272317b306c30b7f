//! Simple undirected graphs on dense `0..n` vertex ids.
//!
//! Adjacency lists are kept sorted and duplicate free, and every edge gets a
//! stable id: its position in the lexicographically sorted list of canonical
//! `(min, max)` pairs. Per-edge data elsewhere in the crate is indexed by it.

mod cliques;
pub mod generators;
pub mod io;
mod ordering;
mod sparsity;

pub use cliques::{
    clique_info, hitting_independent_set, reduce_by_cliques, CliqueInfo, HittingSetFailure,
    ReductionRound, ReductionTrace, MAX_EXACT_CLIQUE_VERTICES,
};
pub use ordering::{
    complement_matching, greedy_colour, list_chromatic_upper, min_degree_ordering, AntiMatching,
    GreedyColouring,
};
pub(crate) use sparsity::neighbourhood_edge_counts;
pub use sparsity::{local_sparsity, regularize, Regularized, SparsityMode, SparsityReport};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    /// `adj_edge[v][i]` is the id of the edge `{v, adj[v][i]}`.
    adj_edge: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            adj_edge: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_canonical(n, canon))
    }

    /// Builds from an edge list that may repeat edges in either orientation;
    /// duplicates are merged. Self-loops are still rejected.
    pub fn from_edges_dedup(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self::from_sorted_canonical(n, canon))
    }

    fn from_sorted_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let mut nbrs = Vec::with_capacity(n);
        let mut ids = Vec::with_capacity(n);
        for mut list in adj {
            list.sort_unstable();
            nbrs.push(list.iter().map(|&(w, _)| w).collect());
            ids.push(list.iter().map(|&(_, e)| e).collect());
        }
        Graph {
            adj: nbrs,
            adj_edge: ids,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edge ids parallel to [`Graph::neighbours`].
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.adj_edge[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Maximum degree; 0 for graphs without vertices.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Id of the edge `uv`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n() {
            return None;
        }
        self.adj[u]
            .binary_search(&v)
            .ok()
            .map(|i| self.adj_edge[u][i])
    }

    /// Canonical `(min, max)` endpoints, indexed by edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `|N(u) ∩ N(v)|` by merging the sorted lists.
    pub fn common_neighbour_count(&self, u: usize, v: usize) -> usize {
        sorted_intersection_count(&self.adj[u], &self.adj[v])
    }

    /// Induced subgraph on `vertices` (in the given order). Vertex `i` of the
    /// result is `vertices[i]` of `self`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Self::from_sorted_canonical(vertices.len(), edges)
    }

    /// Removes `vertices`; returns the remaining graph and, for each of its
    /// vertices, the original id.
    pub fn remove_vertices(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in vertices {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        (self.induced_subgraph(&keep), keep)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            let mut it = self.adj[u].iter().peekable();
            for v in (u + 1)..n {
                while it.peek().is_some_and(|&&w| w < v) {
                    it.next();
                }
                if it.peek() != Some(&&v) {
                    edges.push((u, v));
                }
            }
        }
        Self::from_sorted_canonical(n, edges)
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_sorted_canonical(shift + other.n(), edges)
    }

    /// Adds edges (merging with existing ones).
    pub fn with_extra_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let mut all = self.edges.clone();
        all.extend_from_slice(extra);
        Graph::from_edges(self.n(), &all)
    }

    /// Checks the structural invariants: symmetric, sorted, loop free.
    pub fn check_invariants(&self) -> bool {
        for (v, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            if list.iter().any(|&w| w == v || !self.adj[w].binary_search(&v).is_ok()) {
                return false;
            }
        }
        let total: usize = self.adj.iter().map(Vec::len).sum();
        total == 2 * self.edges.len()
    }

    /// Vertices within distance two of `v`, excluding `v`, ascending.
    pub fn second_neighbourhood(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adj[v]
            .iter()
            .flat_map(|&w| self.adj[w].iter().copied().chain(std::iter::once(w)))
            .filter(|&w| w != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub(crate) fn sorted_intersection_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// `n choose 2`.
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
