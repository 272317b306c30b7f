use serde::{Deserialize, Serialize};

use super::procedure::RoundOutcome;
use crate::correspondence::CorrespondenceAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Colour;

/// Per-vertex counts after a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct VertexStat {
    /// Kept neighbours.
    pub col: usize,
    /// Distinct colours of `u` that kept neighbours' colours correspond to.
    pub dist: usize,
    /// Non-adjacent kept pairs in `N(u)` corresponding to one colour of `u`.
    pub p: u64,
    /// Independent kept triples in `N(u)` corresponding to one colour of `u`.
    pub t: u64,
    /// `|C(u)| - dist`, the list size left for `u` if it is uncoloured.
    pub residual_list: usize,
}

/// `|N(u) ∩ N(v)|` and how many of those common neighbours are uncoloured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub u: usize,
    pub v: usize,
    pub common: usize,
    pub uncoloured: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundStats {
    pub vertices: Vec<VertexStat>,
    /// `N_{u,v}` for every `u <= v` at distance at most two.
    pub pairs: Vec<PairCount>,
    /// `|N(u) ∩ uncoloured|` for every vertex.
    pub residual_degree: Vec<usize>,
    /// Maximum residual degree over uncoloured vertices.
    pub residual_max_degree: Option<usize>,
    /// Smallest residual list over uncoloured vertices.
    pub k_prime: Option<usize>,
}

/// Kept neighbours of `u` keyed by the colour of `u` their colour
/// corresponds to, sorted.
fn corresponding_at(g: &Graph, c: &CorrespondenceAssignment, o: &RoundOutcome, u: usize) -> (usize, Vec<(Colour, usize)>) {
    let mut col = 0;
    let mut keyed = Vec::new();
    for (&v, &e) in g.neighbours(u).iter().zip(g.incident_edges(u)) {
        if !o.kept[v] {
            continue;
        }
        col += 1;
        if let Some(x) = c.correspond(e, v, o.f1[v]) {
            keyed.push((x, v));
        }
    }
    keyed.sort_unstable();
    (col, keyed)
}

pub fn vertex_stat(g: &Graph, c: &CorrespondenceAssignment, o: &RoundOutcome, u: usize) -> VertexStat {
    let (col, keyed) = corresponding_at(g, c, o, u);
    let mut dist = 0;
    let (mut p, mut t) = (0u64, 0u64);
    for class in keyed.chunk_by(|a, b| a.0 == b.0) {
        dist += 1;
        let members: Vec<usize> = class.iter().map(|&(_, v)| v).collect();
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                p += 1;
                for &z in &members[j + 1..] {
                    if !g.has_edge(a, z) && !g.has_edge(b, z) {
                        t += 1;
                    }
                }
            }
        }
    }
    VertexStat {
        col,
        dist,
        p,
        t,
        residual_list: c.colour_set(u).len() - dist,
    }
}

/// Visits every `u <= v` at distance at most two, ascending, with
/// `|N(u) ∩ N(v)|` and the number of those in `uncoloured`.
pub(crate) fn for_each_pair(g: &Graph, uncoloured: &[bool], mut visit: impl FnMut(PairCount)) {
    let n = g.n();
    let mut common = vec![0usize; n];
    let mut unc = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut touched = Vec::new();
    for u in 0..n {
        let mut touch = |v: usize, touched: &mut Vec<usize>| {
            if !seen[v] {
                seen[v] = true;
                touched.push(v);
            }
        };
        touch(u, &mut touched);
        for &w in g.neighbours(u) {
            if w > u {
                touch(w, &mut touched);
            }
            for &v in g.neighbours(w) {
                if v >= u {
                    common[v] += 1;
                    unc[v] += uncoloured[w] as usize;
                    touch(v, &mut touched);
                }
            }
        }
        touched.sort_unstable();
        for &v in &touched {
            visit(PairCount {
                u,
                v,
                common: common[v],
                uncoloured: unc[v],
            });
            common[v] = 0;
            unc[v] = 0;
            seen[v] = false;
        }
        touched.clear();
    }
}

/// `N_{u,v}` for every `u <= v` at distance at most two, ascending.
pub fn pair_counts(g: &Graph, uncoloured: &[bool]) -> Vec<PairCount> {
    let mut out = Vec::new();
    for_each_pair(g, uncoloured, |p| out.push(p));
    out
}

/// All statistics of one round.
pub fn round_stats(g: &Graph, c: &CorrespondenceAssignment, o: &RoundOutcome) -> Result<RoundStats> {
    if o.kept.len() != g.n() || o.direction.len() != g.m() || c.n() != g.n() {
        return Err(Error::InvalidParameter("outcome does not belong to this graph".into()));
    }
    let vertices: Vec<VertexStat> = (0..g.n()).map(|u| vertex_stat(g, c, o, u)).collect();
    let uncoloured: Vec<bool> = o.kept.iter().map(|&k| !k).collect();
    let pairs = pair_counts(g, &uncoloured);
    let residual_degree: Vec<usize> = (0..g.n())
        .map(|u| g.neighbours(u).iter().filter(|&&v| uncoloured[v]).count())
        .collect();
    let unc = || (0..g.n()).filter(|&u| uncoloured[u]);
    Ok(RoundStats {
        residual_max_degree: unc().map(|u| residual_degree[u]).max(),
        k_prime: unc().map(|u| vertices[u].residual_list).min(),
        vertices,
        pairs,
        residual_degree,
    })
}

/// The allowed deviation in the quasirandomness test, as a function of Δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Slack {
    /// `√Δ (ln Δ)^5`.
    Paper,
    /// `c √(Δ ln Δ)`.
    Practical { c: f64 },
    Fixed { value: f64 },
}

impl Default for Slack {
    fn default() -> Self {
        Slack::Paper
    }
}

impl Slack {
    pub fn value(self, max_degree: usize) -> f64 {
        let d = max_degree as f64;
        let ln = if max_degree >= 1 { d.ln() } else { 0.0 };
        match self {
            Slack::Paper => d.sqrt() * ln.powi(5),
            Slack::Practical { c } => c * (d * ln).sqrt(),
            Slack::Fixed { value } => value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairDeviation {
    pub u: usize,
    pub v: usize,
    pub common: usize,
    pub uncoloured: usize,
    /// `| uncoloured - μ·common |`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasirandomReport {
    pub ok: bool,
    pub mu: f64,
    pub slack: f64,
    /// Pairs whose deviation exceeds the slack.
    pub violations: usize,
    /// Largest deviation; ties go to the smallest pair.
    pub worst: Option<PairDeviation>,
}

/// Checks `|N_{u,v} - μ|N(u) ∩ N(v)|| <= slack(Δ)` for all pairs at distance
/// at most two, including `u = v`. With `focus`, only pairs inside it count.
pub fn quasirandom_check(
    g: &Graph,
    uncoloured: &[bool],
    mu: f64,
    slack: Slack,
    focus: Option<&[bool]>,
) -> QuasirandomReport {
    let s = slack.value(g.max_degree());
    let mut worst: Option<PairDeviation> = None;
    let mut violations = 0;
    for_each_pair(g, uncoloured, |p| {
        if let Some(f) = focus {
            if !(f[p.u] && f[p.v]) {
                return;
            }
        }
        let deviation = (p.uncoloured as f64 - mu * p.common as f64).abs();
        if deviation > s {
            violations += 1;
        }
        if worst.map_or(true, |w| deviation > w.deviation) {
            worst = Some(PairDeviation {
                u: p.u,
                v: p.v,
                common: p.common,
                uncoloured: p.uncoloured,
                deviation,
            });
        }
    });
    QuasirandomReport {
        ok: violations == 0,
        mu,
        slack: s,
        violations,
        worst,
    }
}

pub fn mask(n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vertices {
        m[v] = true;
    }
    m
}
