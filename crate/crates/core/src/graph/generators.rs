//! Deterministic and seeded random graph families used by tests and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).expect("complete graph edges are simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle edges are simple")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are simple")
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("star edges are simple")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen edges are simple")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("gnp edges are simple")
}

/// Uniformly-ish random `d`-regular simple graph via the Steger–Wormald
/// pairing process: points are paired one random suitable pair at a time and
/// the whole process restarts if it gets stuck.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n && !(n == 0 && d == 0) {
        return Err(Error::InvalidParameter(format!(
            "degree {d} must be below vertex count {n}"
        )));
    }
    if (n * d) % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "n*d = {} must be even",
            n * d
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..1000 {
        if let Some(edges) = pairing_attempt(n, d, &mut rng) {
            return Graph::from_edges(n, &edges);
        }
    }
    Err(Error::InvalidParameter(format!(
        "could not generate a {d}-regular graph on {n} vertices"
    )))
}

fn pairing_attempt(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    points.shuffle(rng);
    let mut adjacent = vec![Vec::<usize>::new(); n];
    let mut edges = Vec::with_capacity(n * d / 2);
    let suitable = |adjacent: &Vec<Vec<usize>>, a: usize, b: usize| a != b && !adjacent[a].contains(&b);
    while !points.is_empty() {
        let mut misses = 0usize;
        loop {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            if i != j && suitable(&adjacent, points[i], points[j]) {
                let (a, b) = (points[i], points[j]);
                let (hi, lo) = (i.max(j), i.min(j));
                points.swap_remove(hi);
                points.swap_remove(lo);
                adjacent[a].push(b);
                adjacent[b].push(a);
                edges.push((a, b));
                break;
            }
            misses += 1;
            if misses > 64 {
                let any = points.iter().enumerate().any(|(i, &a)| {
                    points[i + 1..].iter().any(|&b| suitable(&adjacent, a, b))
                });
                if !any {
                    return None;
                }
                misses = 0;
            }
        }
    }
    Some(edges)
}
