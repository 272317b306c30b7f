use serde::Serialize;

use super::{choose2, sorted_intersection_count, Graph};
use crate::error::{Error, Result};

/// Which binomial the neighbourhood edge counts are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SparsityMode {
    /// `C(Δ(G), 2)` for every vertex.
    #[default]
    Global,
    /// Additionally report `1 - e(v) / C(d(v), 2)` per vertex.
    PerVertex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparsityReport {
    /// `|E(G[N(v)])|` for each vertex.
    pub neighbourhood_edges: Vec<usize>,
    pub max_degree: usize,
    /// Largest `δ` with `e(v) <= (1 - δ) C(Δ, 2)` for every vertex.
    pub delta: f64,
    /// Per-vertex sparsity against the vertex's own degree; `None` where
    /// `d(v) < 2`. Only filled in [`SparsityMode::PerVertex`].
    pub per_vertex_delta: Option<Vec<Option<f64>>>,
}

impl SparsityReport {
    pub fn max_neighbourhood_edges(&self) -> usize {
        self.neighbourhood_edges.iter().copied().max().unwrap_or(0)
    }
}

pub(crate) fn neighbourhood_edge_counts(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .map(|v| {
            let nv = g.neighbours(v);
            let twice: usize = nv
                .iter()
                .map(|&w| sorted_intersection_count(nv, g.neighbours(w)))
                .sum();
            twice / 2
        })
        .collect()
}

pub fn local_sparsity(g: &Graph, mode: SparsityMode) -> Result<SparsityReport> {
    let max_degree = g.max_degree();
    if max_degree < 2 {
        return Err(Error::SparsityUndefined(max_degree));
    }
    let counts = neighbourhood_edge_counts(g);
    let worst = counts.iter().copied().max().unwrap_or(0);
    let delta = 1.0 - worst as f64 / choose2(max_degree) as f64;
    let per_vertex_delta = match mode {
        SparsityMode::Global => None,
        SparsityMode::PerVertex => Some(
            counts
                .iter()
                .enumerate()
                .map(|(v, &e)| {
                    let d = g.degree(v);
                    (d >= 2).then(|| 1.0 - e as f64 / choose2(d) as f64)
                })
                .collect(),
        ),
    };
    Ok(SparsityReport {
        neighbourhood_edges: counts,
        max_degree,
        delta,
        per_vertex_delta,
    })
}

/// A regular supergraph produced by [`regularize`].
#[derive(Debug, Clone)]
pub struct Regularized {
    pub graph: Graph,
    /// For each vertex of `graph`, the vertex of the input it copies. The
    /// first `n` vertices are the input itself.
    pub origin: Vec<usize>,
    pub doublings: usize,
}

/// Embeds `g` into a `Δ(g)`-regular graph by repeated doubling: take two
/// copies and join each vertex of degree below `Δ` to its twin.
pub fn regularize(g: &Graph) -> Regularized {
    let target = g.max_degree();
    let n0 = g.n();
    let cap = {
        let size = (n0 * target).max(1) as f64;
        size.log2().ceil() as usize + target + 1
    };
    let mut graph = g.clone();
    let mut origin: Vec<usize> = (0..n0).collect();
    let mut doublings = 0;
    while !graph.is_regular() {
        assert!(doublings < cap, "regularize exceeded {cap} doublings");
        let n = graph.n();
        let mut edges: Vec<(usize, usize)> = graph.edges().to_vec();
        edges.extend(graph.edges().iter().map(|&(u, v)| (u + n, v + n)));
        edges.extend((0..n).filter(|&v| graph.degree(v) < target).map(|v| (v, v + n)));
        graph = Graph::from_edges(2 * n, &edges).expect("doubling keeps the graph simple");
        origin.extend_from_within(..);
        doublings += 1;
    }
    Regularized {
        graph,
        origin,
        doublings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    /// Independent recount over all vertex pairs of each neighbourhood.
    fn brute_neighbourhood_edges(g: &Graph, v: usize) -> usize {
        let nv = g.neighbours(v);
        let mut count = 0;
        for (i, &a) in nv.iter().enumerate() {
            for &b in &nv[i + 1..] {
                if g.has_edge(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn complete_and_cycle() {
        let k4 = local_sparsity(&generators::complete(4), SparsityMode::Global).unwrap();
        assert_eq!(k4.neighbourhood_edges, vec![3; 4]);
        assert_eq!(k4.delta, 0.0);
        let c5 = local_sparsity(&generators::cycle(5), SparsityMode::Global).unwrap();
        assert_eq!(c5.neighbourhood_edges, vec![0; 5]);
        assert_eq!(c5.delta, 1.0);
    }

    #[test]
    fn random_cubic_matches_recount() {
        let g = generators::random_regular(8, 3, 2024).unwrap();
        let report = local_sparsity(&g, SparsityMode::Global).unwrap();
        let worst = (0..8).map(|v| brute_neighbourhood_edges(&g, v)).max().unwrap();
        for v in 0..8 {
            assert_eq!(report.neighbourhood_edges[v], brute_neighbourhood_edges(&g, v));
        }
        assert_eq!(report.delta, 1.0 - worst as f64 / 3.0);
    }

    #[test]
    fn degenerate_graphs_are_rejected() {
        assert_eq!(
            local_sparsity(&generators::path(2), SparsityMode::Global),
            Err(Error::SparsityUndefined(1))
        );
        assert!(local_sparsity(&Graph::empty(3), SparsityMode::Global).is_err());
    }

    #[test]
    fn per_vertex_mode_uses_own_degree() {
        // K4 with a pendant vertex 4 on vertex 0.
        let g = generators::complete(4)
            .disjoint_union(&Graph::empty(1))
            .with_extra_edges(&[(0, 4)])
            .unwrap();
        let r = local_sparsity(&g, SparsityMode::PerVertex).unwrap();
        let pv = r.per_vertex_delta.unwrap();
        assert_eq!(pv[4], None);
        assert_eq!(pv[1], Some(0.0));
        assert_eq!(pv[0], Some(0.5));
        assert_eq!(r.delta, 0.5);
    }

    #[test]
    fn regularize_already_regular_is_identity() {
        let k3 = generators::complete(3);
        let r = regularize(&k3);
        assert_eq!(r.graph, k3);
        assert_eq!(r.doublings, 0);
    }

    #[test]
    fn regularize_path_gives_six_cycle() {
        let p3 = generators::path(3);
        let r = regularize(&p3);
        assert_eq!(r.graph.n(), 6);
        assert!(r.graph.is_regular() && r.graph.max_degree() == 2);
        assert_eq!(r.graph.induced_subgraph(&[0, 1, 2]), p3);
        assert_eq!(r.origin, vec![0, 1, 2, 0, 1, 2]);
        // connected 2-regular on 6 vertices
        let mut seen = vec![false; 6];
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            if !std::mem::replace(&mut seen[v], true) {
                stack.extend_from_slice(r.graph.neighbours(v));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn regularize_star_keeps_sparsity() {
        let star = generators::star(3);
        let r = regularize(&star);
        assert_eq!(r.graph.n(), 4 << r.doublings);
        assert!(r.graph.is_regular() && r.graph.max_degree() == 3);
        assert_eq!(r.graph.induced_subgraph(&[0, 1, 2, 3]), star);
        let before = local_sparsity(&star, SparsityMode::Global).unwrap().delta;
        let after = local_sparsity(&r.graph, SparsityMode::Global).unwrap().delta;
        assert!(after >= before);
    }
}
