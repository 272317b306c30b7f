use clap::{Args, Subcommand};
use ncp_core::bounds::{
    approx_eps, condition_check, critical_density_count, density_delta, epsilon_for_alpha, g_func,
    grid_decimals, strong_edge_constants, table1, table1_csv, ApproxVariant,
};
use ncp_core::ncp::{build_schedule, ScheduleInput};
use serde::Serialize;

use crate::common::{need, OutArgs};
use crate::config::{pick, FileConfig, Format, Variant};
use crate::error::CliResult;
use crate::output::{csv_report, emit, json_report, no_csv};

pub const DEFAULT_GRID: f64 = 1e-4;

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Largest `ε` on the grid for α = 0.02, 0.04, .., 0.90.
    Table1 {
        #[arg(long)]
        grid: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Strong edge colouring constants at the default `η`.
    Constants {
        #[command(flatten)]
        out: OutArgs,
    },
    /// The sparsity condition at `(ε, δ)`, with an extended-precision margin.
    Condition {
        #[command(flatten)]
        at: EpsDelta,
        #[command(flatten)]
        out: OutArgs,
    },
    /// `g(ε, δ)`.
    G {
        #[command(flatten)]
        at: EpsDelta,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Polynomial approximation of the best `ε` for a given `δ`.
    Approx {
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sparsity `δ` implied by `ω <= (1 - α)(Δ + 1)` and `ε`.
    Density {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact neighbourhood edge count forced by `k`, `Δ` and `ω`.
    Critical {
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        max_degree: u64,
        #[arg(long)]
        omega: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Largest `ε` on the grid for one `α`.
    Epsilon {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        grid: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Round-by-round parameter schedule.
    Schedule {
        #[command(flatten)]
        at: EpsDelta,
        #[arg(long)]
        eps_prime: Option<f64>,
        #[arg(long)]
        delta_prime: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        /// Starting maximum degree.
        #[arg(long)]
        r0: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
pub struct EpsDelta {
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Echo<T: Serialize> {
    #[serde(flatten)]
    params: T,
    format: Format,
}

fn json<P: Serialize, R: Serialize>(name: &str, params: P, format: Format, result: &R) -> CliResult<String> {
    match format {
        Format::Json => Ok(json_report(name, &Echo { params, format }, result)),
        Format::Csv => Err(no_csv(name)),
    }
}

pub fn run(cmd: &BoundsCommand, file: &FileConfig) -> CliResult<()> {
    let (out, text) = match cmd {
        BoundsCommand::Table1 { grid, out } => {
            let (path, format) = out.resolve(file, Format::Csv);
            let grid = pick(*grid, file.grid, DEFAULT_GRID);
            let rows = table1(grid)?;
            let params = serde_json::json!({ "grid": grid });
            let text = match format {
                Format::Csv => {
                    let body = table1_csv(&rows, grid);
                    let mut lines = body.lines();
                    let header = lines.next().unwrap_or("alpha,eps").to_string();
                    let rest: Vec<String> = lines.map(str::to_string).collect();
                    csv_report("bounds table1", &Echo { params, format }, &header, &rest)
                }
                Format::Json => {
                    let d = grid_decimals(grid);
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| serde_json::json!({ "alpha": format!("{:.2}", r.alpha), "eps": format!("{:.d$}", r.eps) }))
                        .collect();
                    json_report("bounds table1", &Echo { params, format }, &rows)
                }
            };
            (path, text)
        }
        BoundsCommand::Constants { out } => {
            let (path, format) = out.resolve(file, Format::Json);
            let c = strong_edge_constants()?;
            (path, json("bounds constants", serde_json::json!({}), format, &c)?)
        }
        BoundsCommand::Condition { at, out } => {
            let (path, format) = out.resolve(file, Format::Json);
            let eps = need(at.eps, file.eps, "eps")?;
            let delta = need(at.delta, file.delta, "delta")?;
            let r = condition_check(eps, delta)?;
            (path, json("bounds condition", serde_json::json!({ "eps": eps, "delta": delta }), format, &r)?)
        }
        BoundsCommand::G { at, out } => {
            let (path, format) = out.resolve(file, Format::Json);
            let eps = need(at.eps, file.eps, "eps")?;
            let delta = need(at.delta, file.delta, "delta")?;
            let g = g_func(eps, delta)?;
            let params = serde_json::json!({ "eps": eps, "delta": delta });
            (path, json("bounds g", params, format, &serde_json::json!({ "g": g }))?)
        }
        BoundsCommand::Approx { delta, variant, out } => {
            let (path, format) = out.resolve(file, Format::Json);
            let delta = need(*delta, file.delta, "delta")?;
            let variant = pick(*variant, file.variant, Variant::Ours);
            let v = match variant {
                Variant::Ours => ApproxVariant::Ours,
                Variant::BruhnJoos => ApproxVariant::BruhnJoos,
            };
            let (a, b) = v.coefficients();
            let eps = approx_eps(delta, v)?;
            let params = serde_json::json!({ "delta": delta, "variant": variant });
            let result = serde_json::json!({ "eps": eps, "linear": a, "power": b });
            (path, json("bounds approx", params, format, &result)?)
        }
        BoundsCommand::Density { alpha, eps, out } => {
            let (path, format) = out.resolve(file, Format::Json);
            let alpha = need(*alpha, file.alpha, "alpha")?;
            let eps = need(*eps, file.eps, "eps")?;
            let delta = density_delta(alpha, eps)?;
            let params = serde_json::json!({ "alpha": alpha, "eps": eps });
            (path, json("bounds density", params, format, &serde_json::json!({ "delta": delta }))?)
        }
        BoundsCommand::Critical {
            k,
            max_degree,
            omega,
            out,
        } => {
            let (path, format) = out.resolve(file, Format::Json);
            let k = need(*k, file.k.map(|k| k as u64), "k")?;
            let r = critical_density_count(k, *max_degree, *omega);
            let value = *r.numer() as f64 / *r.denom() as f64;
            let params = serde_json::json!({ "k": k, "maxDegree": max_degree, "omega": omega });
            let result = serde_json::json!({ "count": r.to_string(), "value": value });
            (path, json("bounds critical", params, format, &result)?)
        }
        BoundsCommand::Epsilon { alpha, grid, out } => {
            let (path, format) = out.resolve(file, Format::Json);
            let alpha = need(*alpha, file.alpha, "alpha")?;
            let grid = pick(*grid, file.grid, DEFAULT_GRID);
            let eps = epsilon_for_alpha(alpha, grid)?;
            let params = serde_json::json!({ "alpha": alpha, "grid": grid });
            let result = serde_json::json!({ "eps": format!("{:.d$}", eps, d = grid_decimals(grid)) });
            (path, json("bounds epsilon", params, format, &result)?)
        }
        BoundsCommand::Schedule {
            at,
            eps_prime,
            delta_prime,
            beta,
            r0,
            out,
        } => {
            let (path, format) = out.resolve(file, Format::Json);
            let input = ScheduleInput {
                eps: need(at.eps, file.eps, "eps")?,
                delta: need(at.delta, file.delta, "delta")?,
                eps_prime: eps_prime.or(file.eps_prime),
                delta_prime: delta_prime.or(file.delta_prime),
                beta: beta.or(file.beta),
                r0: need(*r0, file.r0, "r0")?,
            };
            let s = build_schedule(input)?;
            let text = match format {
                Format::Json => json_report("bounds schedule", &Echo { params: input, format }, &s),
                Format::Csv => {
                    let rows: Vec<String> = s
                        .rows
                        .iter()
                        .map(|r| format!("{},{},{},{},{},{},{},{}", r.i, r.eps, r.gamma, r.delta, r.k, r.mu, r.r, r.g))
                        .collect();
                    csv_report("bounds schedule", &Echo { params: input, format }, "i,eps,gamma,delta,k,mu,r,g", &rows)
                }
            };
            (path, text)
        }
    };
    emit(out.as_ref(), &text)
}
