//! Exact clique computations and the clique-peeling reduction.

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// Largest graph accepted by the exact solvers in this module.
pub const MAX_EXACT_CLIQUE_VERTICES: usize = 60;

/// Node budget for the exact hitting-set search before falling back to greedy.
const HITTING_SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueInfo {
    pub omega: usize,
    /// Every clique of size `omega`, each ascending, listed in lexicographic order.
    pub maximum_cliques: Vec<Vec<usize>>,
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbours(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

/// Bron–Kerbosch with Tomita pivoting, pruning branches that cannot reach
/// the best size seen so far.
fn expand(r: u64, mut p: u64, mut x: u64, nbr: &[u64], best: &mut u32, found: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        let size = r.count_ones();
        if size > *best {
            *best = size;
            found.clear();
        }
        if size == *best {
            found.push(r);
        }
        return;
    }
    if r.count_ones() + p.count_ones() < *best {
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| ((p & nbr[u]).count_ones(), std::cmp::Reverse(u)))
        .expect("p | x is nonempty");
    for v in bits(p & !nbr[pivot]) {
        let bit = 1u64 << v;
        expand(r | bit, p & nbr[v], x & nbr[v], nbr, best, found);
        p &= !bit;
        x |= bit;
    }
}

/// Clique number and all maximum cliques, computed exactly.
pub fn clique_info(g: &Graph) -> Result<CliqueInfo> {
    let n = g.n();
    if n > MAX_EXACT_CLIQUE_VERTICES {
        return Err(Error::SizeGuard {
            n,
            limit: MAX_EXACT_CLIQUE_VERTICES,
        });
    }
    if n == 0 {
        return Ok(CliqueInfo {
            omega: 0,
            maximum_cliques: Vec::new(),
        });
    }
    let nbr = adjacency_masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    let mut found = Vec::new();
    expand(0, all, 0, &nbr, &mut best, &mut found);
    let mut maximum_cliques: Vec<Vec<usize>> = found.into_iter().map(|m| bits(m).collect()).collect();
    maximum_cliques.sort();
    Ok(CliqueInfo {
        omega: best as usize,
        maximum_cliques,
    })
}

/// Why no independent set meeting every maximum clique was returned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HittingSetFailure {
    /// True when the exact search ran to completion, so no such set exists.
    pub exhaustive: bool,
    pub nodes_explored: u64,
    /// Maximum cliques missed by the greedy fallback (when it ran).
    pub unhit_cliques: usize,
}

impl std::fmt::Display for HittingSetFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exhaustive {
            write!(
                f,
                "no independent set meets every maximum clique (exhaustive search, {} nodes)",
                self.nodes_explored
            )
        } else {
            write!(
                f,
                "search budget of {} nodes exhausted; greedy fallback missed {} maximum cliques",
                self.nodes_explored, self.unhit_cliques
            )
        }
    }
}

enum Search {
    Found(u64),
    Exhausted,
    OutOfBudget,
}

struct HitSearch<'a> {
    nbr: &'a [u64],
    cliques: &'a [u64],
    nodes: u64,
    budget: u64,
}

impl HitSearch<'_> {
    fn run(&mut self, chosen: u64, blocked: u64) -> Search {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Search::OutOfBudget;
        }
        // Most constrained unhit clique first; ties go to the earliest clique.
        let mut pick: Option<(u32, u64)> = None;
        for &c in self.cliques {
            if c & chosen != 0 {
                continue;
            }
            let options = c & !blocked;
            let count = options.count_ones();
            if count == 0 {
                return Search::Exhausted;
            }
            if pick.map_or(true, |(best, _)| count < best) {
                pick = Some((count, options));
            }
        }
        let Some((_, options)) = pick else {
            return Search::Found(chosen);
        };
        let mut out_of_budget = false;
        for v in bits(options) {
            match self.run(chosen | 1 << v, blocked | self.nbr[v] | 1 << v) {
                Search::Found(s) => return Search::Found(s),
                Search::OutOfBudget => out_of_budget = true,
                Search::Exhausted => {}
            }
            if out_of_budget {
                break;
            }
        }
        if out_of_budget {
            Search::OutOfBudget
        } else {
            Search::Exhausted
        }
    }
}

/// An independent set meeting every clique in `info.maximum_cliques`,
/// ascending. Exact search first; if its budget runs out, a greedy pass that
/// takes the smallest compatible vertex of each clique in turn.
pub fn hitting_independent_set(
    g: &Graph,
    info: &CliqueInfo,
) -> std::result::Result<Vec<usize>, HittingSetFailure> {
    hitting_with_budget(g, info, HITTING_SEARCH_BUDGET)
}

fn hitting_with_budget(
    g: &Graph,
    info: &CliqueInfo,
    budget: u64,
) -> std::result::Result<Vec<usize>, HittingSetFailure> {
    assert!(g.n() <= 64, "hitting search uses 64-bit vertex masks");
    let nbr = adjacency_masks(g);
    let cliques: Vec<u64> = info
        .maximum_cliques
        .iter()
        .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let mut search = HitSearch {
        nbr: &nbr,
        cliques: &cliques,
        nodes: 0,
        budget,
    };
    match search.run(0, 0) {
        Search::Found(s) => Ok(bits(s).collect()),
        Search::Exhausted => Err(HittingSetFailure {
            exhaustive: true,
            nodes_explored: search.nodes,
            unhit_cliques: 0,
        }),
        Search::OutOfBudget => {
            let (mut chosen, mut blocked) = (0u64, 0u64);
            let mut unhit = 0;
            for &c in &cliques {
                if c & chosen != 0 {
                    continue;
                }
                match bits(c & !blocked).next() {
                    Some(v) => {
                        chosen |= 1 << v;
                        blocked |= nbr[v] | 1 << v;
                    }
                    None => unhit += 1,
                }
            }
            if unhit == 0 {
                Ok(bits(chosen).collect())
            } else {
                Err(HittingSetFailure {
                    exhaustive: false,
                    nodes_explored: search.nodes - 1,
                    unhit_cliques: unhit,
                })
            }
        }
    }
}

/// Maximum degree with the empty graph counted as `-1`, so that deleting the
/// last vertex still lowers it.
pub(crate) fn signed_max_degree(g: &Graph) -> i64 {
    if g.n() == 0 {
        -1
    } else {
        g.max_degree() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionRound {
    pub omega_before: usize,
    pub omega_after: usize,
    pub max_degree_before: i64,
    pub max_degree_after: i64,
    /// The independent set meeting every maximum clique (input ids).
    pub hitting_set: Vec<usize>,
    /// Its extension to a maximal independent set, deleted this round (input ids).
    pub removed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub graph: Graph,
    /// Input id of each vertex of `graph`.
    pub vertices: Vec<usize>,
    pub rounds: Vec<ReductionRound>,
}

impl ReductionTrace {
    pub fn peeled(&self) -> usize {
        self.rounds.len()
    }
}

/// Deletes maximal independent sets meeting every maximum clique until
/// `3ω <= 2(Δ + 1)`. Each round must lower `ω` by exactly one and `Δ` by at
/// least one; a violation or a failed hitting-set search aborts.
pub fn reduce_by_cliques(g: &Graph) -> Result<ReductionTrace> {
    let mut graph = g.clone();
    let mut vertices: Vec<usize> = (0..g.n()).collect();
    let mut info = clique_info(&graph)?;
    let mut rounds = Vec::new();
    loop {
        let delta = signed_max_degree(&graph);
        if 3 * info.omega as i64 <= 2 * (delta + 1) {
            break;
        }
        let hit = hitting_independent_set(&graph, &info).map_err(|f| {
            Error::Reduction(format!("round {}: {f}", rounds.len() + 1))
        })?;
        let mut in_set = vec![false; graph.n()];
        let mut blocked = vec![false; graph.n()];
        for &v in &hit {
            in_set[v] = true;
            blocked[v] = true;
            for &w in graph.neighbours(v) {
                blocked[w] = true;
            }
        }
        for v in 0..graph.n() {
            if !blocked[v] {
                in_set[v] = true;
                blocked[v] = true;
                for &w in graph.neighbours(v) {
                    blocked[w] = true;
                }
            }
        }
        let removed: Vec<usize> = (0..graph.n()).filter(|&v| in_set[v]).collect();
        let (next, keep) = graph.remove_vertices(&removed);
        let next_info = clique_info(&next)?;
        let next_delta = signed_max_degree(&next);
        let round = ReductionRound {
            omega_before: info.omega,
            omega_after: next_info.omega,
            max_degree_before: delta,
            max_degree_after: next_delta,
            hitting_set: hit.iter().map(|&v| vertices[v]).collect(),
            removed: removed.iter().map(|&v| vertices[v]).collect(),
        };
        if round.omega_after + 1 != round.omega_before {
            return Err(Error::Reduction(format!(
                "round {}: clique number went from {} to {}",
                rounds.len() + 1,
                round.omega_before,
                round.omega_after
            )));
        }
        if round.max_degree_after > round.max_degree_before - 1 {
            return Err(Error::Reduction(format!(
                "round {}: maximum degree went from {} to {}",
                rounds.len() + 1,
                round.max_degree_before,
                round.max_degree_after
            )));
        }
        vertices = keep.iter().map(|&v| vertices[v]).collect();
        graph = next;
        info = next_info;
        rounds.push(round);
    }
    Ok(ReductionTrace {
        graph,
        vertices,
        rounds,
    })
}
