//! How sparsity of the uncoloured graph evolves over repeated rounds.

use rayon::prelude::*;
use serde::Serialize;

use crate::correspondence::{residual_assignment, CorrespondenceAssignment, PartialColouring};
use crate::error::{Error, Result};
use crate::graph::{local_sparsity, Graph, SparsityMode};
use crate::ncp::rng::{derive_seed, TAG_ROUND, TAG_TRIAL};
use crate::ncp::{keep_probability, quasirandom_check, run_round, Slack};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub count: u64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    fn of(xs: &[f64]) -> Option<Self> {
        if xs.is_empty() {
            return None;
        }
        Some(Summary {
            count: xs.len() as u64,
            mean: xs.iter().sum::<f64>() / xs.len() as f64,
            min: xs.iter().copied().fold(f64::INFINITY, f64::min),
            max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRound {
    pub round: usize,
    /// Trials that still had uncoloured vertices to run this round on.
    pub trials: u64,
    /// Uncoloured vertices after the round.
    pub uncoloured: Summary,
    /// `δ'` of the uncoloured subgraph, over trials where it is defined.
    pub delta_prime: Option<Summary>,
    /// `δ' / δ`, when both are defined and `δ > 0`.
    pub ratio: Option<Summary>,
    /// Largest `|N_{u,v} - μ|N(u) ∩ N(v)||` in the round.
    pub worst_deviation: Option<Summary>,
    /// `δ'` per trial, in trial order.
    pub delta_prime_values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualSparsityReport {
    pub n: usize,
    pub max_degree: usize,
    pub delta: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    pub rounds: Vec<ResidualRound>,
}

#[derive(Debug, Clone, Copy)]
struct Step {
    uncoloured: usize,
    delta_prime: Option<f64>,
    worst: Option<f64>,
}

fn run_trial(g: &Graph, c: &CorrespondenceAssignment, rounds: usize, seed: u64) -> Result<Vec<Step>> {
    let mut f = PartialColouring::uncoloured(g.n());
    let mut steps = Vec::new();
    for r in 0..rounds {
        let res = residual_assignment(g, c, &f)?;
        let k = res.assignment.min_set_size();
        if res.graph.n() == 0 || k == 0 {
            break;
        }
        let round_c = res.assignment.truncate(k)?.totalize()?;
        let o = run_round(&res.graph, &round_c, derive_seed(seed, r as u64, TAG_ROUND))?;
        for (j, &v) in res.vertices.iter().enumerate() {
            if let Some(x) = o.f.get(j) {
                f.set(v, Some(x));
            }
        }
        let uncoloured: Vec<bool> = o.kept.iter().map(|&k| !k).collect();
        let mu = 1.0 - keep_probability(k, res.graph.max_degree())?;
        let q = quasirandom_check(&res.graph, &uncoloured, mu, Slack::Paper, None);
        let rest = g.induced_subgraph(&f.uncoloured_vertices());
        steps.push(Step {
            uncoloured: rest.n(),
            delta_prime: local_sparsity(&rest, SparsityMode::Global).ok().map(|s| s.delta),
            worst: q.worst.map(|w| w.deviation),
        });
    }
    Ok(steps)
}

/// Runs `rounds` rounds on the residual graph, `trials` times. Trial `t`
/// uses `derive_seed(seed, t, TAG_TRIAL)` and round `r` within it
/// `derive_seed(trial_seed, r, TAG_ROUND)`.
pub fn residual_sparsity_experiment(
    g: &Graph,
    c: &CorrespondenceAssignment,
    rounds: usize,
    trials: u64,
    seed: u64,
) -> Result<ResidualSparsityReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if c.n() != g.n() {
        return Err(Error::InvalidAssignment("assignment and graph sizes differ".into()));
    }
    let delta = local_sparsity(g, SparsityMode::Global).ok().map(|s| s.delta);
    let per_trial: Vec<Vec<Step>> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(g, c, rounds, derive_seed(seed, t, TAG_TRIAL)))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    for r in 0..rounds {
        let steps: Vec<Step> = per_trial.iter().filter_map(|s| s.get(r).copied()).collect();
        if steps.is_empty() {
            break;
        }
        let uncoloured: Vec<f64> = steps.iter().map(|s| s.uncoloured as f64).collect();
        let dp: Vec<f64> = steps.iter().filter_map(|s| s.delta_prime).collect();
        let ratios: Vec<f64> = match delta {
            Some(d) if d > 0.0 => dp.iter().map(|x| x / d).collect(),
            _ => Vec::new(),
        };
        let worst: Vec<f64> = steps.iter().filter_map(|s| s.worst).collect();
        out.push(ResidualRound {
            round: r,
            trials: steps.len() as u64,
            uncoloured: Summary::of(&uncoloured).expect("nonempty"),
            delta_prime: Summary::of(&dp),
            ratio: Summary::of(&ratios),
            worst_deviation: Summary::of(&worst),
            delta_prime_values: steps.iter().map(|s| s.delta_prime).collect(),
        });
    }
    Ok(ResidualSparsityReport {
        n: g.n(),
        max_degree: g.max_degree(),
        delta,
        trials,
        seed,
        rounds: out,
    })
}
