use clap::{Args, Subcommand};
use ncp_core::harness::{monte_carlo_round, residual_sparsity_experiment, MonteCarloOptions};
use serde::Serialize;

use crate::common::{AssignArgs, AssignConfig, OutArgs, SourceArgs, SourceConfig};
use crate::config::{pick, FileConfig, Format};
use crate::error::{CliError, CliResult};
use crate::output::{csv_report, emit, json_report};

pub const DEFAULT_MC_TRIALS: u64 = 10_000;
pub const DEFAULT_RESIDUAL_TRIALS: u64 = 100;
pub const DEFAULT_ROUNDS: usize = 3;

#[derive(Subcommand, Debug)]
pub enum SimulateCommand {
    /// Repeated single rounds: keep rates, `P_u`, `T_u` against closed forms.
    MonteCarlo(MonteCarloArgs),
    /// Sparsity of the uncoloured graph over several rounds.
    Residual(ResidualArgs),
}

#[derive(Args, Debug)]
pub struct Instance {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub assign: AssignArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct MonteCarloArgs {
    #[command(flatten)]
    pub instance: Instance,
    /// Estimate `E[N_{u,v}]` for every pair at distance at most two.
    #[arg(long)]
    pub pairs: bool,
    /// Measure the sparsity of the uncoloured subgraph.
    #[arg(long)]
    pub residual_sparsity: bool,
}

#[derive(Args, Debug)]
pub struct ResidualArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[arg(long)]
    pub rounds: Option<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SimConfig<X: Serialize> {
    #[serde(flatten)]
    source: SourceConfig,
    #[serde(flatten)]
    assign: AssignConfig,
    seed: u64,
    trials: u64,
    #[serde(flatten)]
    extra: X,
    format: Format,
}

fn resolve<X: Serialize>(
    i: &Instance,
    file: &FileConfig,
    default_trials: u64,
    extra: X,
) -> CliResult<(Option<std::path::PathBuf>, SimConfig<X>)> {
    let (out, format) = i.out.resolve(file, Format::Json);
    let trials = pick(i.trials, file.trials, default_trials);
    if trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    Ok((
        out,
        SimConfig {
            source: i.source.resolve(file),
            assign: i.assign.resolve(file),
            seed: pick(i.seed, file.seed, 0),
            trials,
            extra,
            format,
        },
    ))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct McExtra {
    pairs: bool,
    residual_sparsity: bool,
}

#[derive(Serialize)]
struct ResExtra {
    rounds: usize,
}

pub fn run(cmd: &SimulateCommand, file: &FileConfig) -> CliResult<()> {
    match cmd {
        SimulateCommand::MonteCarlo(a) => {
            let extra = McExtra {
                pairs: a.pairs,
                residual_sparsity: a.residual_sparsity,
            };
            let (out, cfg) = resolve(&a.instance, file, DEFAULT_MC_TRIALS, extra)?;
            let g = cfg.source.load(cfg.seed)?;
            let c = cfg.assign.build(&g, cfg.seed)?;
            let options = MonteCarloOptions {
                pairs: cfg.extra.pairs,
                residual_sparsity: cfg.extra.residual_sparsity,
            };
            let r = monte_carlo_round(&g, &c, cfg.trials, cfg.seed, options)?;
            let text = match cfg.format {
                Format::Json => json_report("simulate monte-carlo", &cfg, &r),
                Format::Csv => {
                    let rows: Vec<String> = r
                        .vertices
                        .iter()
                        .map(|v| {
                            format!(
                                "{},{},{},{},{},{},{},{},{},{}",
                                v.vertex,
                                v.degree,
                                v.keep.mean,
                                v.keep.se,
                                v.keep_expected,
                                v.keep_z,
                                v.p.mean,
                                v.p.se,
                                v.t.mean,
                                v.t.se
                            )
                        })
                        .collect();
                    csv_report(
                        "simulate monte-carlo",
                        &cfg,
                        "vertex,degree,keep,keep_se,keep_expected,keep_z,p,p_se,t,t_se",
                        &rows,
                    )
                }
            };
            emit(out.as_ref(), &text)
        }
        SimulateCommand::Residual(a) => {
            let extra = ResExtra {
                rounds: pick(a.rounds, file.rounds, DEFAULT_ROUNDS),
            };
            let (out, cfg) = resolve(&a.instance, file, DEFAULT_RESIDUAL_TRIALS, extra)?;
            let g = cfg.source.load(cfg.seed)?;
            let c = cfg.assign.build(&g, cfg.seed)?;
            let r = residual_sparsity_experiment(&g, &c, cfg.extra.rounds, cfg.trials, cfg.seed)?;
            let text = match cfg.format {
                Format::Json => json_report("simulate residual", &cfg, &r),
                Format::Csv => {
                    let opt = |x: Option<f64>| x.map(|x| x.to_string()).unwrap_or_default();
                    let rows: Vec<String> = r
                        .rounds
                        .iter()
                        .map(|x| {
                            format!(
                                "{},{},{},{},{},{},{},{}",
                                x.round,
                                x.trials,
                                x.uncoloured.mean,
                                opt(x.delta_prime.map(|s| s.mean)),
                                opt(x.delta_prime.map(|s| s.min)),
                                opt(x.delta_prime.map(|s| s.max)),
                                opt(x.ratio.map(|s| s.mean)),
                                opt(x.worst_deviation.map(|s| s.max)),
                            )
                        })
                        .collect();
                    csv_report(
                        "simulate residual",
                        &cfg,
                        "round,trials,uncoloured_mean,delta_prime_mean,delta_prime_min,delta_prime_max,ratio_mean,worst_deviation_max",
                        &rows,
                    )
                }
            };
            emit(out.as_ref(), &text)
        }
    }
}
