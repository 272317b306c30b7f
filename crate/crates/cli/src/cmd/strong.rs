use clap::Args;
use ncp_core::strong_edge::{
    f_core_density_check, is_strong_edge_colouring, strong_edge_colour, FCoreDensityReport, StrongEdgeOptions,
    DEFAULT_EPS, DEFAULT_ETA,
};
use ncp_core::Colour;
use serde::Serialize;

use crate::common::{DriverArgs, DriverConfig, GraphSummary, OutArgs, SourceArgs, SourceConfig};
use crate::config::{pick, FileConfig, Format};
use crate::error::{CliError, CliResult};
use crate::output::{csv_report, emit, json_report};

#[derive(Args, Debug)]
pub struct StrongEdgeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// F-core parameter.
    #[arg(long)]
    pub eta: Option<f64>,
    /// List shortfall for the core when the engine runs.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Colour everything first-fit, skipping the engine on the core.
    #[arg(long)]
    pub no_engine: bool,
    /// Also report the F-core density check.
    #[arg(long)]
    pub density: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub driver: DriverArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StrongConfig {
    #[serde(flatten)]
    source: SourceConfig,
    eta: f64,
    eps: f64,
    engine: bool,
    density: bool,
    seed: u64,
    #[serde(flatten)]
    driver: DriverConfig,
    format: Format,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StrongResult {
    #[serde(flatten)]
    graph: GraphSummary,
    num_colours: usize,
    ratio_to_delta_sq: f64,
    f_core_size: usize,
    engine_used: bool,
    engine_fallback: bool,
    valid: bool,
    /// Colour of each edge, by edge id.
    colours: Vec<Colour>,
    f_core_density: Option<FCoreDensityReport>,
}

pub fn run(args: &StrongEdgeArgs, file: &FileConfig) -> CliResult<()> {
    let (out, format) = args.out.resolve(file, Format::Json);
    let cfg = StrongConfig {
        source: args.source.resolve(file),
        eta: pick(args.eta, file.eta, DEFAULT_ETA),
        eps: pick(args.eps, file.eps, DEFAULT_EPS),
        engine: !args.no_engine && file.engine.unwrap_or(true),
        density: args.density,
        seed: pick(args.seed, file.seed, 0),
        driver: args.driver.resolve(file)?,
        format,
    };
    let h = cfg.source.load(cfg.seed)?;
    let options = StrongEdgeOptions {
        eta: cfg.eta,
        use_engine: cfg.engine,
        eps: cfg.eps,
        driver: cfg.driver.params(None),
    };
    let s = strong_edge_colour(&h, &options, cfg.seed)?;
    let valid = is_strong_edge_colouring(&h, &s.colours);
    let f_core_density = if cfg.density { Some(f_core_density_check(&h, cfg.eta)?) } else { None };
    let result = StrongResult {
        graph: GraphSummary::of(&h),
        num_colours: s.num_colours,
        ratio_to_delta_sq: s.ratio_to_delta_sq,
        f_core_size: s.f_core_size,
        engine_used: s.engine_used,
        engine_fallback: s.engine_fallback,
        valid,
        colours: s.colours,
        f_core_density,
    };
    let text = match format {
        Format::Json => json_report("strong-edge", &cfg, &result),
        Format::Csv => {
            let rows: Vec<String> = h
                .edges()
                .iter()
                .zip(&result.colours)
                .enumerate()
                .map(|(e, (&(u, v), c))| format!("{e},{u},{v},{c}"))
                .collect();
            csv_report("strong-edge", &cfg, "edge,u,v,colour", &rows)
        }
    };
    emit(out.as_ref(), &text)?;
    if valid {
        Ok(())
    } else {
        Err(CliError::Failed("colouring is not a strong edge colouring".into()))
    }
}
