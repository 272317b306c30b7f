//! Seeded Monte Carlo estimates for one round of the procedure.
//!
//! Trials run in parallel, but every accumulator is an integer sum, so the
//! report does not depend on how trials are split across threads.

use rayon::prelude::*;
use serde::Serialize;

use crate::correspondence::CorrespondenceAssignment;
use crate::error::{Error, Result};
use crate::graph::{choose2, local_sparsity, neighbourhood_edge_counts, Graph, SparsityMode};
use crate::ncp::rng::{derive_seed, TAG_TRIAL};
use crate::ncp::{keep_probability, pair_counts, run_round, vertex_stat};

/// Mean and standard error from integer sums of a sample and its squares.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    /// `sqrt(s² / trials)` with the unbiased sample variance `s²`.
    pub se: f64,
}

impl Estimate {
    fn from_sums(sum: u128, sum_sq: u128, trials: u64) -> Self {
        Self::from_scaled(sum as f64, sum_sq as f64, trials, 1.0)
    }

    /// For samples `x / scale`.
    fn from_scaled(sum: f64, sum_sq: f64, trials: u64, scale: f64) -> Self {
        let t = trials as f64;
        let mean = sum / t / scale;
        let se = if trials > 1 {
            let var = ((sum_sq / (scale * scale)) - t * mean * mean) / (t - 1.0);
            (var.max(0.0) / t).sqrt()
        } else {
            0.0
        };
        Estimate { mean, se }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexEstimate {
    pub vertex: usize,
    pub degree: usize,
    pub keep: Estimate,
    /// `(1 - 1/(2k))^{d(u)}` with `k = |C(u)|`.
    pub keep_expected: f64,
    pub keep_z: f64,
    pub p: Estimate,
    pub t: Estimate,
    /// `δ_u Δ²/(2k) e^{-Δ/k}`, with `δ_u` the vertex's own sparsity against Δ.
    pub p_reference: f64,
    /// `1 - mean(P_u) / p_reference`, the gap factor the measurement leaves.
    pub p_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairEstimate {
    pub u: usize,
    pub v: usize,
    pub common: usize,
    pub uncoloured: Estimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub trials: u64,
    pub seed: u64,
    pub n: usize,
    pub max_degree: usize,
    pub k: usize,
    /// Fraction of vertices kept, averaged over trials, with the standard
    /// error across trials.
    pub keep_fraction: Estimate,
    /// Average of the per-vertex closed forms.
    pub keep_expected: f64,
    pub keep_z: f64,
    pub vertices: Vec<VertexEstimate>,
    pub pairs: Option<Vec<PairEstimate>>,
    /// Sparsity of the uncoloured subgraph, over trials where it is defined.
    pub residual_sparsity: Option<Estimate>,
    pub residual_sparsity_defined: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MonteCarloOptions {
    pub pairs: bool,
    pub residual_sparsity: bool,
}

#[derive(Clone)]
struct Acc {
    kept_total: u128,
    kept_total_sq: u128,
    keep: Vec<u128>,
    p: Vec<u128>,
    p_sq: Vec<u128>,
    t: Vec<u128>,
    t_sq: Vec<u128>,
    pair: Vec<u128>,
    pair_sq: Vec<u128>,
    /// `(trial, δ)` of the uncoloured subgraph.
    sparsity: Vec<(u64, f64)>,
}

impl Acc {
    fn new(n: usize, pairs: usize) -> Self {
        Acc {
            kept_total: 0,
            kept_total_sq: 0,
            keep: vec![0; n],
            p: vec![0; n],
            p_sq: vec![0; n],
            t: vec![0; n],
            t_sq: vec![0; n],
            pair: vec![0; pairs],
            pair_sq: vec![0; pairs],
            sparsity: Vec::new(),
        }
    }

    fn merge(mut self, o: Acc) -> Acc {
        self.kept_total += o.kept_total;
        self.kept_total_sq += o.kept_total_sq;
        for (a, b) in [
            (&mut self.keep, &o.keep),
            (&mut self.p, &o.p),
            (&mut self.p_sq, &o.p_sq),
            (&mut self.t, &o.t),
            (&mut self.t_sq, &o.t_sq),
            (&mut self.pair, &o.pair),
            (&mut self.pair_sq, &o.pair_sq),
        ] {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
        self.sparsity.extend(o.sparsity);
        self
    }
}

/// Runs `trials` independent rounds; trial `t` uses seed
/// `derive_seed(seed, t, TAG_TRIAL)`.
pub fn monte_carlo_round(
    g: &Graph,
    c: &CorrespondenceAssignment,
    trials: u64,
    seed: u64,
    options: MonteCarloOptions,
) -> Result<MonteCarloReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let n = g.n();
    let d = g.max_degree();
    let base_pairs = if options.pairs { pair_counts(g, &vec![false; n]) } else { Vec::new() };
    // surfaces input errors before the parallel section
    run_round(g, c, seed)?;

    let trial = |mut acc: Acc, t: u64| -> Acc {
        let o = run_round(g, c, derive_seed(seed, t, TAG_TRIAL)).expect("input was checked");
        let kept = o.kept_count() as u128;
        acc.kept_total += kept;
        acc.kept_total_sq += kept * kept;
        for u in 0..n {
            acc.keep[u] += o.kept[u] as u128;
            let s = vertex_stat(g, c, &o, u);
            acc.p[u] += s.p as u128;
            acc.p_sq[u] += (s.p as u128).pow(2);
            acc.t[u] += s.t as u128;
            acc.t_sq[u] += (s.t as u128).pow(2);
        }
        let uncoloured: Vec<bool> = o.kept.iter().map(|&k| !k).collect();
        if options.pairs {
            for (i, p) in pair_counts(g, &uncoloured).iter().enumerate() {
                acc.pair[i] += p.uncoloured as u128;
                acc.pair_sq[i] += (p.uncoloured as u128).pow(2);
            }
        }
        if options.residual_sparsity {
            let rest = g.induced_subgraph(&o.uncoloured());
            if let Ok(r) = local_sparsity(&rest, SparsityMode::Global) {
                acc.sparsity.push((t, r.delta));
            }
        }
        acc
    };
    let mut acc = (0..trials)
        .into_par_iter()
        .fold(|| Acc::new(n, base_pairs.len()), trial)
        .reduce(|| Acc::new(n, base_pairs.len()), Acc::merge);
    // float sums below run in trial order
    acc.sparsity.sort_unstable_by_key(|&(t, _)| t);
    let sparsities: Vec<f64> = acc.sparsity.iter().map(|&(_, x)| x).collect();

    let counts = neighbourhood_edge_counts(g);
    let binom = choose2(d) as f64;
    let vertices: Vec<VertexEstimate> = (0..n)
        .map(|u| {
            let k = c.colour_set(u).len();
            let keep = Estimate::from_sums(acc.keep[u], acc.keep[u], trials);
            let keep_expected = keep_probability(k, g.degree(u)).unwrap_or(0.0);
            let delta_u = if binom > 0.0 { 1.0 - counts[u] as f64 / binom } else { 0.0 };
            let (df, kf) = (d as f64, k as f64);
            let p_reference = delta_u * df * df / (2.0 * kf) * (-df / kf).exp();
            let p = Estimate::from_sums(acc.p[u], acc.p_sq[u], trials);
            VertexEstimate {
                vertex: u,
                degree: g.degree(u),
                keep_z: z(keep.mean, keep_expected, keep.se),
                keep,
                keep_expected,
                p_gap: (p_reference > 0.0).then(|| 1.0 - p.mean / p_reference),
                p,
                t: Estimate::from_sums(acc.t[u], acc.t_sq[u], trials),
                p_reference,
            }
        })
        .collect();
    let keep_fraction = Estimate::from_scaled(
        acc.kept_total as f64,
        acc.kept_total_sq as f64,
        trials,
        n.max(1) as f64,
    );
    let keep_expected = if n == 0 {
        1.0
    } else {
        vertices.iter().map(|v| v.keep_expected).sum::<f64>() / n as f64
    };
    let pairs = options.pairs.then(|| {
        base_pairs
            .iter()
            .enumerate()
            .map(|(i, p)| PairEstimate {
                u: p.u,
                v: p.v,
                common: p.common,
                uncoloured: Estimate::from_sums(acc.pair[i], acc.pair_sq[i], trials),
            })
            .collect()
    });
    let residual_sparsity = (!sparsities.is_empty()).then(|| {
        let s: f64 = sparsities.iter().sum();
        let sq: f64 = sparsities.iter().map(|x| x * x).sum();
        Estimate::from_scaled(s, sq, sparsities.len() as u64, 1.0)
    });
    Ok(MonteCarloReport {
        trials,
        seed,
        n,
        max_degree: d,
        k: c.min_set_size(),
        keep_z: z(keep_fraction.mean, keep_expected, keep_fraction.se),
        keep_fraction,
        keep_expected,
        vertices,
        pairs,
        residual_sparsity_defined: sparsities.len() as u64,
        residual_sparsity,
    })
}

fn z(mean: f64, expected: f64, se: f64) -> f64 {
    if se > 0.0 {
        (mean - expected) / se
    } else if mean == expected {
        0.0
    } else {
        f64::INFINITY.copysign(mean - expected)
    }
}
