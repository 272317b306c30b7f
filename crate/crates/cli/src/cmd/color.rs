use clap::Args;
use ncp_core::graph::{local_sparsity, SparsityMode};
use ncp_core::ncp::{build_schedule, iterative_colour, DriverTrace, Schedule, ScheduleInput};
use serde::Serialize;

use crate::common::{AssignArgs, AssignConfig, DriverArgs, DriverConfig, GraphSummary, OutArgs, SourceArgs, SourceConfig};
use crate::config::{pick, FileConfig, Format};
use crate::error::{CliError, CliResult};
use crate::output::{csv_report, emit, json_report};

#[derive(Args, Debug)]
pub struct ColorArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub assign: AssignArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub driver: DriverArgs,
    /// Drive rounds from a parameter schedule instead of measured sparsity.
    #[arg(long)]
    pub schedule: bool,
    /// Schedule `ε`; defaults to `1 - k/Δ`.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Schedule `δ`; defaults to the measured sparsity.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ColorConfig {
    #[serde(flatten)]
    source: SourceConfig,
    #[serde(flatten)]
    assign: AssignConfig,
    seed: u64,
    #[serde(flatten)]
    driver: DriverConfig,
    schedule: bool,
    eps: Option<f64>,
    delta: Option<f64>,
    beta: Option<f64>,
    format: Format,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ColorResult {
    #[serde(flatten)]
    graph: GraphSummary,
    k: usize,
    success: bool,
    coloured: usize,
    schedule: Option<Schedule>,
    trace: DriverTrace,
}

pub fn run(args: &ColorArgs, file: &FileConfig) -> CliResult<()> {
    let (out, format) = args.out.resolve(file, Format::Json);
    let cfg = ColorConfig {
        source: args.source.resolve(file),
        assign: args.assign.resolve(file),
        seed: pick(args.seed, file.seed, 0),
        driver: args.driver.resolve(file)?,
        schedule: args.schedule || file.schedule.unwrap_or(false),
        eps: args.eps.or(file.eps),
        delta: args.delta.or(file.delta),
        beta: args.beta.or(file.beta),
        format,
    };
    let g = cfg.source.load(cfg.seed)?;
    let c = cfg.assign.build(&g, cfg.seed)?;
    let k = c.min_set_size();

    let schedule = if cfg.schedule {
        let d = g.max_degree();
        if d < 2 || k >= d {
            return Err(CliError::Usage(format!(
                "a schedule needs 2 <= k < Δ; got k = {k}, Δ = {d}"
            )));
        }
        let eps_prime = 1.0 - k as f64 / d as f64;
        let delta = match cfg.delta {
            Some(x) => x,
            None => local_sparsity(&g, SparsityMode::Global)?.delta,
        };
        Some(build_schedule(ScheduleInput {
            eps: cfg.eps.unwrap_or(eps_prime),
            delta,
            eps_prime: Some(eps_prime),
            delta_prime: None,
            beta: cfg.beta,
            r0: d as f64,
        })?)
    } else {
        None
    };

    let trace = iterative_colour(&g, &c, &cfg.driver.params(schedule.clone()), cfg.seed)?;
    if trace.success {
        c.validate_colouring(&g, &trace.colouring)
            .map_err(|e| CliError::Failed(format!("engine returned a bad colouring: {e}")))?;
    }
    let success = trace.success;
    let result = ColorResult {
        graph: GraphSummary::of(&g),
        k,
        success,
        coloured: trace.colouring.coloured_count(),
        schedule,
        trace,
    };
    let text = match format {
        Format::Json => json_report("color", &cfg, &result),
        Format::Csv => {
            let rows: Vec<String> = result
                .trace
                .colouring
                .0
                .iter()
                .enumerate()
                .map(|(v, x)| format!("{v},{}", x.map(|x| x.to_string()).unwrap_or_default()))
                .collect();
            csv_report("color", &cfg, "vertex,colour", &rows)
        }
    };
    emit(out.as_ref(), &text)?;
    if success {
        Ok(())
    } else {
        Err(CliError::Failed(match result.trace.failed_round {
            Some(r) => format!("round {r} exhausted its restarts"),
            None => "greedy completion left vertices uncoloured".into(),
        }))
    }
}
