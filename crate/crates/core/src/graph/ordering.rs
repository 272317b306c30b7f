use super::Graph;
use crate::error::{Error, Result};
use crate::Colour;

/// A maximal matching in the complement, with the size guarantee it must meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiMatching {
    pub pairs: Vec<(usize, usize)>,
    /// `⌈(n - ω) / 2⌉` for the clique number supplied by the caller.
    pub bound: usize,
}

impl AntiMatching {
    pub fn meets_bound(&self) -> bool {
        self.pairs.len() >= self.bound
    }

    /// Vertices not covered by the matching; by maximality they form a clique.
    pub fn unmatched(&self, n: usize) -> Vec<usize> {
        let mut covered = vec![false; n];
        for &(a, b) in &self.pairs {
            covered[a] = true;
            covered[b] = true;
        }
        (0..n).filter(|&v| !covered[v]).collect()
    }
}

/// Greedy maximal matching in the complement of `g`, scanning ids in order.
pub fn complement_matching(g: &Graph, omega: usize) -> AntiMatching {
    let n = g.n();
    let mut matched = vec![false; n];
    let mut pairs = Vec::new();
    for u in 0..n {
        if matched[u] {
            continue;
        }
        if let Some(v) = ((u + 1)..n).find(|&v| !matched[v] && !g.has_edge(u, v)) {
            matched[u] = true;
            matched[v] = true;
            pairs.push((u, v));
        }
    }
    AntiMatching {
        pairs,
        bound: n.saturating_sub(omega).div_ceil(2),
    }
}

/// Orders `subset` so each vertex has minimum degree in the subgraph induced
/// by itself and the vertices after it. Ties go to the smallest id.
pub fn min_degree_ordering(g: &Graph, subset: &[usize]) -> Vec<usize> {
    let mut in_rest = vec![false; g.n()];
    for &v in subset {
        in_rest[v] = true;
    }
    let mut deg: Vec<usize> = (0..g.n())
        .map(|v| {
            if in_rest[v] {
                g.neighbours(v).iter().filter(|&&w| in_rest[w]).count()
            } else {
                0
            }
        })
        .collect();
    let mut remaining: Vec<usize> = subset.to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let (pos, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| (deg[v], v))
            .expect("nonempty");
        remaining.remove(pos);
        in_rest[v] = false;
        for &w in g.neighbours(v) {
            if in_rest[w] {
                deg[w] -= 1;
            }
        }
        order.push(v);
    }
    order
}

/// `⌊(n + ω) / 2⌋`, an upper bound on the list chromatic number.
pub fn list_chromatic_upper(n: usize, omega: usize) -> Result<usize> {
    if omega > n {
        return Err(Error::InvalidParameter(format!(
            "clique number {omega} exceeds vertex count {n}"
        )));
    }
    if omega == 0 && n > 0 {
        return Err(Error::InvalidParameter(
            "clique number of a nonempty graph is at least 1".into(),
        ));
    }
    Ok((n + omega) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyColouring {
    pub colouring: Vec<Option<Colour>>,
    /// Vertices whose palette was exhausted, in processing order.
    pub failed: Vec<usize>,
}

impl GreedyColouring {
    pub fn is_total(&self) -> bool {
        self.failed.is_empty() && self.colouring.iter().all(Option::is_some)
    }
}

/// First-fit list colouring: each vertex in `order` takes the smallest colour
/// of its palette not used by an already coloured neighbour.
pub fn greedy_colour(g: &Graph, order: &[usize], palette: &[Vec<Colour>]) -> GreedyColouring {
    let mut colouring: Vec<Option<Colour>> = vec![None; g.n()];
    let mut failed = Vec::new();
    let mut blocked: Vec<Colour> = Vec::new();
    for &v in order {
        blocked.clear();
        blocked.extend(g.neighbours(v).iter().filter_map(|&w| colouring[w]));
        blocked.sort_unstable();
        let mut choices: Vec<Colour> = palette[v].clone();
        choices.sort_unstable();
        match choices.into_iter().find(|c| blocked.binary_search(c).is_err()) {
            Some(c) => colouring[v] = Some(c),
            None => failed.push(v),
        }
    }
    GreedyColouring { colouring, failed }
}
