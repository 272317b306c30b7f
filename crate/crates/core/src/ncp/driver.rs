use serde::{Deserialize, Serialize};

use super::rng::{derive_seed, TAG_ROUND};
use super::round::{attempt_round_focused, RoundParams};
use super::schedule::Schedule;
use crate::correspondence::{residual_assignment, CorrespondenceAssignment, PartialColouring};
use crate::error::{Error, Result};
use crate::graph::{local_sparsity, min_degree_ordering, regularize, Graph, SparsityMode};
use crate::Colour;

/// Largest regularized graph the driver will build before falling back to
/// running the round on the residual graph as it is.
pub const DEFAULT_REGULARIZE_LIMIT: usize = 1 << 20;

pub const DEFAULT_MAX_ROUNDS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OnExhausted {
    /// Stop with a failure.
    #[default]
    Fail,
    /// Continue with the attempt that had the fewest bad events.
    UseBest,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriverParams {
    /// `gamma` and `delta` are overwritten each round.
    pub round: RoundParams,
    /// Supplies `γ_i`, `δ_i` and the round count; without it `γ = 0`, `δ` is
    /// measured, and at most `max_rounds` rounds run.
    pub schedule: Option<Schedule>,
    pub max_rounds: usize,
    pub on_exhausted: OnExhausted,
    pub regularize_limit: usize,
}

impl Default for DriverParams {
    fn default() -> Self {
        DriverParams {
            round: RoundParams::default(),
            schedule: None,
            max_rounds: DEFAULT_MAX_ROUNDS,
            on_exhausted: OnExhausted::Fail,
            regularize_limit: DEFAULT_REGULARIZE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub vertex: usize,
    pub kept: bool,
    pub f1: Colour,
    #[serde(rename = "Col")]
    pub col: usize,
    #[serde(rename = "Dist")]
    pub dist: usize,
    #[serde(rename = "Pu")]
    pub p: u64,
    #[serde(rename = "Tu")]
    pub t: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DriverRound {
    pub index: usize,
    /// Vertices entering the round.
    pub n: usize,
    pub max_degree: usize,
    /// Common list size after truncation.
    pub k: usize,
    pub k_scheduled: Option<f64>,
    pub gamma: f64,
    pub delta: f64,
    /// Vertices of the graph the round actually ran on.
    pub round_graph_n: usize,
    pub regularized: bool,
    pub success: bool,
    pub restarts: usize,
    pub a_violations: usize,
    pub b_violations: usize,
    pub coloured: usize,
    /// Smallest residual list left for the round's uncoloured vertices.
    pub k_prime: Option<usize>,
    pub k_prime_target: f64,
    pub residual_delta: Option<usize>,
    /// Sparsity of the residual graph; `None` when its max degree is below 2.
    pub residual_sparsity: Option<f64>,
    pub vertices: Vec<VertexReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GreedyCompletion {
    pub colouring: PartialColouring,
    /// Every uncoloured vertex had more free colours than uncoloured neighbours.
    pub hypothesis_held: bool,
    /// The first vertex left without a free colour.
    pub failed: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DriverTrace {
    pub rounds: Vec<DriverRound>,
    pub greedy: Option<GreedyCompletion>,
    pub colouring: PartialColouring,
    /// Round index that stopped the run, if it stopped early.
    pub failed_round: Option<usize>,
    pub success: bool,
}

/// Colours greedily in reverse min-degree order, skipping colours that
/// correspond to an already coloured neighbour's colour.
pub fn greedy_complete(g: &Graph, c: &CorrespondenceAssignment, f: &PartialColouring) -> Result<GreedyCompletion> {
    let res = residual_assignment(g, c, f)?;
    let hypothesis_held = (0..res.graph.n()).all(|i| res.assignment.colour_set(i).len() > res.graph.degree(i));
    let mut order = min_degree_ordering(g, &res.vertices);
    order.reverse();
    let mut out = f.clone();
    let mut failed = None;
    let mut blocked: Vec<Colour> = Vec::new();
    for v in order {
        blocked.clear();
        for (&w, &e) in g.neighbours(v).iter().zip(g.incident_edges(v)) {
            if let Some(x) = out.get(w).and_then(|fw| c.correspond(e, w, fw)) {
                blocked.push(x);
            }
        }
        match c.colour_set(v).iter().find(|x| !blocked.contains(x)) {
            Some(&x) => out.set(v, Some(x)),
            None => {
                failed.get_or_insert(v);
            }
        }
    }
    Ok(GreedyCompletion {
        colouring: out,
        hypothesis_held,
        failed,
    })
}

/// Repeats the round on the residual graph until lists exceed degrees, then
/// finishes greedily.
pub fn iterative_colour(
    g: &Graph,
    c: &CorrespondenceAssignment,
    params: &DriverParams,
    seed: u64,
) -> Result<DriverTrace> {
    if c.n() != g.n() {
        return Err(Error::InvalidAssignment("assignment and graph sizes differ".into()));
    }
    let limit = params
        .schedule
        .as_ref()
        .map_or(params.max_rounds, |s| s.t);
    let mut f = PartialColouring::uncoloured(g.n());
    let mut rounds = Vec::new();
    let mut failed_round = None;
    for index in 0..=limit {
        let res = residual_assignment(g, c, &f)?;
        let n = res.graph.n();
        let max_degree = res.graph.max_degree();
        let k = res.assignment.min_set_size();
        if n == 0 || k > max_degree || k == 0 || index == limit {
            break;
        }
        let row = params.schedule.as_ref().map(|s| s.rows[index]);
        let (gamma, delta) = match row {
            Some(r) => (r.gamma, r.delta),
            None => (params.round.gamma, measured_sparsity(&res.graph).unwrap_or(0.0)),
        };
        let truncated = res.assignment.truncate(k)?.totalize()?;
        let projected = n.checked_shl((max_degree - res.graph.min_degree()) as u32).unwrap_or(usize::MAX);
        let regularized = projected <= params.regularize_limit;
        let (round_graph, round_c) = if regularized {
            let reg = regularize(&res.graph);
            let lifted = truncated.lift(&res.graph, &reg)?;
            (reg.graph, lifted)
        } else {
            (res.graph.clone(), truncated)
        };
        let mut focus = vec![false; round_graph.n()];
        focus[..n].iter_mut().for_each(|x| *x = true);
        let round_params = RoundParams {
            gamma,
            delta,
            ..params.round
        };
        let result = attempt_round_focused(
            &round_graph,
            &round_c,
            &round_params,
            derive_seed(seed, index as u64, TAG_ROUND),
            Some(&focus),
        )?;
        let success = result.is_success();
        let report = result.report();

        let mut coloured = 0;
        for (j, &v) in res.vertices.iter().enumerate() {
            if let Some(x) = report.outcome.f.get(j) {
                f.set(v, Some(x));
                coloured += 1;
            }
        }
        let after = residual_assignment(g, c, &f)?;
        let vertices = res
            .vertices
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let s = report.stats.vertices[j];
                VertexReport {
                    vertex: v,
                    kept: report.outcome.kept[j],
                    f1: report.outcome.f1[j],
                    col: s.col,
                    dist: s.dist,
                    p: s.p,
                    t: s.t,
                }
            })
            .collect();
        rounds.push(DriverRound {
            index,
            n,
            max_degree,
            k,
            k_scheduled: row.map(|r| r.k),
            gamma,
            delta,
            round_graph_n: round_graph.n(),
            regularized,
            success,
            restarts: report.restarts(),
            a_violations: report.a_violations.len(),
            b_violations: report.quasirandom.violations,
            coloured,
            k_prime: (0..after.graph.n()).map(|i| after.assignment.colour_set(i).len()).min(),
            k_prime_target: report.k_prime_target,
            residual_delta: (after.graph.n() > 0).then(|| after.graph.max_degree()),
            residual_sparsity: measured_sparsity(&after.graph),
            vertices,
        });
        if !success && params.on_exhausted == OnExhausted::Fail {
            failed_round = Some(index);
            break;
        }
    }
    if let Some(i) = failed_round {
        return Ok(DriverTrace {
            rounds,
            greedy: None,
            colouring: f,
            failed_round: Some(i),
            success: false,
        });
    }
    let greedy = greedy_complete(g, c, &f)?;
    let colouring = greedy.colouring.clone();
    let success = greedy.failed.is_none() && colouring.is_total() && c.is_valid_colouring(g, &colouring);
    Ok(DriverTrace {
        rounds,
        greedy: Some(greedy),
        colouring,
        failed_round: None,
        success,
    })
}

fn measured_sparsity(g: &Graph) -> Option<f64> {
    local_sparsity(g, SparsityMode::Global).ok().map(|r| r.delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::ncp::round::ThresholdProfile;
    use crate::ncp::stats::Slack;

    #[test]
    fn edgeless_needs_no_rounds() {
        let g = Graph::empty(5);
        let c = CorrespondenceAssignment::uniform_lists(&g, 1).unwrap();
        let t = iterative_colour(&g, &c, &DriverParams::default(), 0).unwrap();
        assert!(t.success);
        assert!(t.rounds.is_empty());
    }

    #[test]
    fn c5_with_three_colours_goes_straight_to_greedy() {
        let g = generators::cycle(5);
        let c = CorrespondenceAssignment::uniform_lists(&g, 3).unwrap();
        let t = iterative_colour(&g, &c, &DriverParams::default(), 0).unwrap();
        assert!(t.success && t.rounds.is_empty());
        assert!(t.greedy.unwrap().hypothesis_held);
        assert!(c.is_valid_colouring(&g, &t.colouring));
    }

    #[test]
    fn greedy_examples() {
        let k2 = generators::complete(2);
        let c = CorrespondenceAssignment::uniform_lists(&k2, 1).unwrap();
        let f = PartialColouring(vec![Some(0), None]);
        let r = greedy_complete(&k2, &c, &f).unwrap();
        assert_eq!(r.failed, Some(1));
        assert!(!r.hypothesis_held);

        let p3 = generators::path(3);
        let c = CorrespondenceAssignment::uniform_lists(&p3, 2).unwrap();
        let f = PartialColouring(vec![None, Some(0), None]);
        let r = greedy_complete(&p3, &c, &f).unwrap();
        assert!(r.hypothesis_held && r.failed.is_none());
        assert_eq!(r.colouring.0, vec![Some(1), Some(0), Some(1)]);

        let total = PartialColouring(vec![Some(1), Some(0), Some(1)]);
        assert_eq!(greedy_complete(&p3, &c, &total).unwrap().colouring, total);
    }

    #[test]
    fn practical_run_is_valid_and_repeatable() {
        let g = generators::random_regular(100, 8, 3).unwrap();
        let c = CorrespondenceAssignment::uniform_lists(&g, 8).unwrap();
        let params = DriverParams {
            round: RoundParams {
                thresholds: ThresholdProfile::Practical { tau: 0.5 },
                slack: Slack::Practical { c: 3.0 },
                max_restarts: 20,
                ..RoundParams::default()
            },
            on_exhausted: OnExhausted::UseBest,
            ..DriverParams::default()
        };
        let a = iterative_colour(&g, &c, &params, 12).unwrap();
        let b = iterative_colour(&g, &c, &params, 12).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(!a.rounds.is_empty());
        if a.success {
            assert!(c.is_valid_colouring(&g, &a.colouring));
        }
        // colours kept in a round survive to the end
        for r in &a.rounds {
            for v in r.vertices.iter().filter(|v| v.kept) {
                assert_eq!(a.colouring.get(v.vertex), Some(v.f1));
            }
        }
    }
}
