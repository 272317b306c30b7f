#![allow(dead_code)]

use ncp_core::{Colour, CorrespondenceAssignment, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << slots.len())
        .map(|mask| {
            let edges: Vec<_> = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

pub fn random_graph(r: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = r.gen_range(1..=max_n);
    let p: f64 = r.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn random_sets(r: &mut ChaCha8Rng, n: usize, max_k: usize, palette: usize) -> Vec<Vec<Colour>> {
    (0..n)
        .map(|_| {
            let k = r.gen_range(1..=max_k);
            let mut all: Vec<Colour> = (0..palette as Colour).collect();
            all.shuffle(r);
            all.truncate(k);
            all
        })
        .collect()
}

/// Random colour sets with identity maps on shared colours.
pub fn random_lists(g: &Graph, r: &mut ChaCha8Rng, max_k: usize, palette: usize) -> CorrespondenceAssignment {
    CorrespondenceAssignment::from_lists(g, random_sets(r, g.n(), max_k, palette)).unwrap()
}

/// Random colour sets and random partial matchings on every edge.
pub fn random_correspondence(g: &Graph, r: &mut ChaCha8Rng, max_k: usize, palette: usize) -> CorrespondenceAssignment {
    let sets = random_sets(r, g.n(), max_k, palette);
    let maps = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut a = sets[u].clone();
            let mut b = sets[v].clone();
            a.shuffle(r);
            b.shuffle(r);
            let keep = r.gen_range(0..=a.len().min(b.len()));
            ((u, v), a.into_iter().zip(b).take(keep).collect())
        })
        .collect();
    CorrespondenceAssignment::new(g, sets, maps).unwrap()
}

/// Colours `0..k` everywhere with a uniformly random bijection on every edge.
pub fn random_total(g: &Graph, r: &mut ChaCha8Rng, k: usize) -> CorrespondenceAssignment {
    let maps = g
        .edges()
        .iter()
        .map(|&e| {
            let mut image: Vec<Colour> = (0..k as Colour).collect();
            image.shuffle(r);
            (e, (0..k as Colour).zip(image).collect())
        })
        .collect();
    CorrespondenceAssignment::new(g, vec![(0..k as Colour).collect(); g.n()], maps).unwrap()
}
