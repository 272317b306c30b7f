use clap::{Args, Subcommand};
use ncp_core::graph::{clique_info, reduce_by_cliques, ReductionRound};
use ncp_core::harness::{
    correspondence_colouring, enumerate_outcomes, exact_chromatic, k_colouring, EnumerationOptions,
    MAX_EXACT_VERTICES,
};
use ncp_core::PartialColouring;
use serde::Serialize;

use crate::common::{AssignArgs, AssignConfig, GraphSummary, OutArgs, SourceArgs, SourceConfig};
use crate::config::{pick, FileConfig, Format};
use crate::error::{CliError, CliResult};
use crate::output::{csv_report, emit, json_report, no_csv};

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Exact expectations of one round over every outcome.
    Enumerate {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        assign: AssignArgs,
        #[arg(long)]
        seed: Option<u64>,
        /// Run greedy completion on every outcome meeting its hypothesis.
        #[arg(long)]
        check_greedy: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Chromatic number by exhaustive search.
    Chromatic(Plain),
    /// Whether the assignment admits a valid colouring.
    Colourable {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        assign: AssignArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Peel maximal independent sets meeting every maximum clique.
    Reduce(Plain),
}

#[derive(Args, Debug)]
pub struct Plain {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct InstanceConfig {
    #[serde(flatten)]
    source: SourceConfig,
    #[serde(flatten)]
    assign: Option<AssignConfig>,
    seed: u64,
    check_greedy: bool,
    format: Format,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ChromaticResult {
    #[serde(flatten)]
    graph: GraphSummary,
    omega: usize,
    chromatic: usize,
    colouring: Vec<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ColourableResult {
    #[serde(flatten)]
    graph: GraphSummary,
    colourable: bool,
    colouring: Option<PartialColouring>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ChiCheck {
    chromatic: usize,
    remaining_chromatic: usize,
    /// `χ(G) <= χ(G'') + peeled`.
    holds: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReduceResult {
    #[serde(flatten)]
    graph: GraphSummary,
    peeled: usize,
    rounds: Vec<ReductionRound>,
    remaining: GraphSummary,
    remaining_vertices: Vec<usize>,
    remaining_omega: usize,
    /// Only for graphs small enough for exact search.
    chromatic_check: Option<ChiCheck>,
}

pub fn run(cmd: &OracleCommand, file: &FileConfig) -> CliResult<()> {
    match cmd {
        OracleCommand::Enumerate {
            source,
            assign,
            seed,
            check_greedy,
            out,
        } => {
            let (path, format) = out.resolve(file, Format::Json);
            let cfg = InstanceConfig {
                source: source.resolve(file),
                assign: Some(assign.resolve(file)),
                seed: pick(*seed, file.seed, 0),
                check_greedy: *check_greedy,
                format,
            };
            let g = cfg.source.load(cfg.seed)?;
            let c = cfg.assign.as_ref().expect("set above").build(&g, cfg.seed)?;
            let r = enumerate_outcomes(
                &g,
                &c,
                EnumerationOptions {
                    check_greedy: cfg.check_greedy,
                },
            )?;
            let text = match format {
                Format::Json => json_report("oracle enumerate", &cfg, &r),
                Format::Csv => {
                    let rows: Vec<String> = r
                        .vertices
                        .iter()
                        .map(|v| {
                            format!(
                                "{},{},{},{},{},{},{},{}",
                                v.vertex, v.degree, v.list_size, v.keep, v.col, v.dist, v.p, v.t
                            )
                        })
                        .collect();
                    csv_report("oracle enumerate", &cfg, "vertex,degree,list_size,keep,col,dist,p,t", &rows)
                }
            };
            emit(path.as_ref(), &text)?;
            if r.engine_mismatches > 0 || r.greedy_failures > 0 {
                return Err(CliError::Failed(format!(
                    "{} engine mismatches, {} greedy failures",
                    r.engine_mismatches, r.greedy_failures
                )));
            }
            Ok(())
        }
        OracleCommand::Chromatic(p) => {
            let (path, format, cfg) = plain(p, file)?;
            let g = cfg.source.load(cfg.seed)?;
            let chromatic = exact_chromatic(&g)?;
            let result = ChromaticResult {
                graph: GraphSummary::of(&g),
                omega: clique_info(&g)?.omega,
                chromatic,
                colouring: k_colouring(&g, chromatic)?.expect("χ colours suffice"),
            };
            emit(path.as_ref(), &json_only("oracle chromatic", &cfg, format, &result)?)
        }
        OracleCommand::Colourable {
            source,
            assign,
            seed,
            out,
        } => {
            let (path, format) = out.resolve(file, Format::Json);
            let cfg = InstanceConfig {
                source: source.resolve(file),
                assign: Some(assign.resolve(file)),
                seed: pick(*seed, file.seed, 0),
                check_greedy: false,
                format,
            };
            let g = cfg.source.load(cfg.seed)?;
            let c = cfg.assign.as_ref().expect("set above").build(&g, cfg.seed)?;
            let colouring = correspondence_colouring(&g, &c)?;
            let result = ColourableResult {
                graph: GraphSummary::of(&g),
                colourable: colouring.is_some(),
                colouring,
            };
            emit(path.as_ref(), &json_only("oracle colourable", &cfg, format, &result)?)
        }
        OracleCommand::Reduce(p) => {
            let (path, format, cfg) = plain(p, file)?;
            let g = cfg.source.load(cfg.seed)?;
            let t = reduce_by_cliques(&g)?;
            let chromatic_check = if g.n() <= MAX_EXACT_VERTICES {
                let chromatic = exact_chromatic(&g)?;
                let remaining_chromatic = exact_chromatic(&t.graph)?;
                Some(ChiCheck {
                    chromatic,
                    remaining_chromatic,
                    holds: chromatic <= remaining_chromatic + t.peeled(),
                })
            } else {
                None
            };
            let holds = chromatic_check.as_ref().map_or(true, |c| c.holds);
            let result = ReduceResult {
                graph: GraphSummary::of(&g),
                peeled: t.peeled(),
                remaining: GraphSummary::of(&t.graph),
                remaining_omega: clique_info(&t.graph)?.omega,
                remaining_vertices: t.vertices,
                rounds: t.rounds,
                chromatic_check,
            };
            emit(path.as_ref(), &json_only("oracle reduce", &cfg, format, &result)?)?;
            if holds {
                Ok(())
            } else {
                Err(CliError::Failed("chromatic bound violated after reduction".into()))
            }
        }
    }
}

fn plain(p: &Plain, file: &FileConfig) -> CliResult<(Option<std::path::PathBuf>, Format, InstanceConfig)> {
    let (path, format) = p.out.resolve(file, Format::Json);
    let cfg = InstanceConfig {
        source: p.source.resolve(file),
        assign: None,
        seed: pick(p.seed, file.seed, 0),
        check_greedy: false,
        format,
    };
    Ok((path, format, cfg))
}

fn json_only<C: Serialize, R: Serialize>(name: &str, cfg: &C, format: Format, result: &R) -> CliResult<String> {
    match format {
        Format::Json => Ok(json_report(name, cfg, result)),
        Format::Csv => Err(no_csv(name)),
    }
}
