//! Exhaustive outcome enumeration for tiny instances.
//!
//! The statistics here are recomputed with plain nested loops over vertex
//! pairs and triples, independently of the indexed versions in
//! [`crate::ncp`], and the two are compared on every outcome.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use super::ratio_string;
use crate::correspondence::CorrespondenceAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ncp::{greedy_complete, outcome_from_choices, pair_counts, vertex_stat};
use crate::Colour;

pub const ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexExpectation {
    pub vertex: usize,
    pub degree: usize,
    pub list_size: usize,
    #[serde(serialize_with = "ratio_string")]
    pub keep: Ratio<u128>,
    #[serde(serialize_with = "ratio_string")]
    pub col: Ratio<u128>,
    #[serde(serialize_with = "ratio_string")]
    pub dist: Ratio<u128>,
    #[serde(serialize_with = "ratio_string")]
    pub p: Ratio<u128>,
    #[serde(serialize_with = "ratio_string")]
    pub t: Ratio<u128>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairExpectation {
    pub u: usize,
    pub v: usize,
    pub common: usize,
    /// `E[N_{u,v}]`.
    #[serde(serialize_with = "ratio_string")]
    pub uncoloured: Ratio<u128>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnumerationResult {
    pub n: usize,
    pub m: usize,
    /// `Π|C(u)| · 2^{|E|}`.
    pub outcomes: u128,
    pub vertices: Vec<VertexExpectation>,
    pub pairs: Vec<PairExpectation>,
    /// Outcomes where the indexed statistics disagree with the loops here.
    pub engine_mismatches: u64,
    /// Outcomes with `Col(u) - Dist(u) >= d(u) + 1 - |C(u)|` at every vertex.
    pub greedy_applicable: u64,
    /// Of those, outcomes where greedy completion did not produce a valid
    /// total colouring.
    pub greedy_failures: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerationOptions {
    /// Run greedy completion on every outcome meeting the partial-colouring
    /// hypothesis.
    pub check_greedy: bool,
}

pub fn outcome_count(g: &Graph, c: &CorrespondenceAssignment) -> u128 {
    let mut count: u128 = 1;
    for v in 0..g.n() {
        count = count.saturating_mul(c.colour_set(v).len() as u128);
    }
    if g.m() >= 128 {
        return u128::MAX;
    }
    count.saturating_mul(1u128 << g.m())
}

struct Naive {
    n: usize,
    adj: Vec<Vec<bool>>,
    /// `(from, to)` → pairs of the map read from `from`'s side.
    maps: HashMap<(usize, usize), Vec<(Colour, Colour)>>,
}

impl Naive {
    fn new(g: &Graph, c: &CorrespondenceAssignment) -> Self {
        let n = g.n();
        let mut adj = vec![vec![false; n]; n];
        let mut maps = HashMap::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && g.has_edge(u, v) {
                    adj[u][v] = true;
                    let m = c.oriented_map(g, u, v).expect("edge has a map");
                    maps.insert((u, v), m.pairs().to_vec());
                }
            }
        }
        Naive { n, adj, maps }
    }

    fn map(&self, from: usize, to: usize, colour: Colour) -> Option<Colour> {
        self.maps[&(from, to)].iter().find(|p| p.0 == colour).map(|p| p.1)
    }

    fn kept(&self, f1: &[Colour], points_at: &HashMap<(usize, usize), usize>) -> Vec<bool> {
        let mut kept = vec![true; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                if self.adj[u][v] && self.map(u, v, f1[u]) == Some(f1[v]) && points_at[&(u.min(v), u.max(v))] == u {
                    kept[u] = false;
                }
            }
        }
        kept
    }

    /// Colour at `u` that kept neighbour `v`'s colour corresponds to.
    fn at(&self, u: usize, v: usize, f1: &[Colour]) -> Option<Colour> {
        self.map(v, u, f1[v])
    }

    /// `(Col, Dist, P, T)` at `u`.
    fn stats(&self, u: usize, f1: &[Colour], kept: &[bool]) -> (usize, usize, u64, u64) {
        let nbrs: Vec<usize> = (0..self.n).filter(|&v| self.adj[u][v] && kept[v]).collect();
        let col = nbrs.len();
        let mut seen: Vec<Colour> = nbrs.iter().filter_map(|&v| self.at(u, v, f1)).collect();
        seen.sort_unstable();
        seen.dedup();
        let (mut p, mut t) = (0, 0);
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                let (a, b) = (nbrs[i], nbrs[j]);
                let ca = self.at(u, a, f1);
                if self.adj[a][b] || ca.is_none() || ca != self.at(u, b, f1) {
                    continue;
                }
                p += 1;
                for &z in &nbrs[j + 1..] {
                    if !self.adj[a][z] && !self.adj[b][z] && self.at(u, z, f1) == ca {
                        t += 1;
                    }
                }
            }
        }
        (col, seen.len(), p, t)
    }

    /// Pairs `u <= v` at distance at most two, with their common neighbourhood.
    fn pairs(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                let common: Vec<usize> = (0..self.n).filter(|&w| self.adj[u][w] && self.adj[v][w]).collect();
                if u == v || self.adj[u][v] || !common.is_empty() {
                    out.push((u, v, common));
                }
            }
        }
        out
    }
}

/// Walks every tentative colouring and every edge direction, accumulating
/// exact expectations.
pub fn enumerate_outcomes(
    g: &Graph,
    c: &CorrespondenceAssignment,
    options: EnumerationOptions,
) -> Result<EnumerationResult> {
    if c.n() != g.n() {
        return Err(Error::InvalidAssignment("assignment and graph sizes differ".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| c.colour_set(v).is_empty()) {
        return Err(Error::InvalidAssignment(format!("vertex {v} has no colours")));
    }
    let outcomes = outcome_count(g, c);
    if outcomes > ENUMERATION_LIMIT {
        return Err(Error::OutcomeGuard {
            count: outcomes,
            limit: ENUMERATION_LIMIT,
        });
    }
    let n = g.n();
    let naive = Naive::new(g, c);
    let pairs = naive.pairs();
    let mut keep = vec![0u128; n];
    let mut col = vec![0u128; n];
    let mut dist = vec![0u128; n];
    let mut p_sum = vec![0u128; n];
    let mut t_sum = vec![0u128; n];
    let mut n_sum = vec![0u128; pairs.len()];
    let (mut mismatches, mut applicable, mut failures) = (0u64, 0u64, 0u64);

    let sets: Vec<&[Colour]> = (0..n).map(|v| c.colour_set(v)).collect();
    let mut digits = vec![0usize; n];
    loop {
        let f1: Vec<Colour> = (0..n).map(|v| sets[v][digits[v]]).collect();
        for bits in 0u64..(1u64 << g.m()) {
            let direction: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| if bits >> e & 1 == 0 { a } else { b })
                .collect();
            let points_at: HashMap<(usize, usize), usize> =
                g.edges().iter().copied().zip(direction.iter().copied()).collect();
            let kept = naive.kept(&f1, &points_at);
            let engine = outcome_from_choices(g, c, f1.clone(), direction);
            let mut agree = engine.kept == kept;

            let mut hypothesis = true;
            for u in 0..n {
                let (cl, ds, p, t) = naive.stats(u, &f1, &kept);
                keep[u] += kept[u] as u128;
                col[u] += cl as u128;
                dist[u] += ds as u128;
                p_sum[u] += p as u128;
                t_sum[u] += t as u128;
                if agree {
                    let s = vertex_stat(g, c, &engine, u);
                    agree = (s.col, s.dist, s.p, s.t) == (cl, ds, p, t);
                }
                hypothesis &= cl as i64 - ds as i64 >= g.degree(u) as i64 + 1 - sets[u].len() as i64;
            }
            let uncoloured: Vec<bool> = kept.iter().map(|&k| !k).collect();
            let naive_pairs: Vec<(usize, usize, usize, usize)> = pairs
                .iter()
                .map(|(u, v, common)| (*u, *v, common.len(), common.iter().filter(|&&w| uncoloured[w]).count()))
                .collect();
            for (i, np) in naive_pairs.iter().enumerate() {
                n_sum[i] += np.3 as u128;
            }
            if agree {
                let indexed: Vec<(usize, usize, usize, usize)> = pair_counts(g, &uncoloured)
                    .into_iter()
                    .map(|p| (p.u, p.v, p.common, p.uncoloured))
                    .collect();
                agree = indexed == naive_pairs;
            }
            if !agree {
                mismatches += 1;
            }
            if options.check_greedy && hypothesis {
                applicable += 1;
                let done = greedy_complete(g, c, &engine.f)?;
                if done.failed.is_some() || !c.is_valid_colouring(g, &done.colouring) || !done.colouring.is_total() {
                    failures += 1;
                }
            }
        }
        // advance the mixed-radix counter over tentative colourings
        let mut i = 0;
        while i < n {
            digits[i] += 1;
            if digits[i] < sets[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }

    let r = |x: u128| Ratio::new(x, outcomes);
    Ok(EnumerationResult {
        n,
        m: g.m(),
        outcomes,
        vertices: (0..n)
            .map(|u| VertexExpectation {
                vertex: u,
                degree: g.degree(u),
                list_size: sets[u].len(),
                keep: r(keep[u]),
                col: r(col[u]),
                dist: r(dist[u]),
                p: r(p_sum[u]),
                t: r(t_sum[u]),
            })
            .collect(),
        pairs: pairs
            .iter()
            .zip(&n_sum)
            .map(|((u, v, common), &s)| PairExpectation {
                u: *u,
                v: *v,
                common: common.len(),
                uncoloured: r(s),
            })
            .collect(),
        engine_mismatches: mismatches,
        greedy_applicable: applicable,
        greedy_failures: failures,
    })
}
