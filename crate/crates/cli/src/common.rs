//! Argument groups shared by several subcommands, and their resolved forms.

use std::path::PathBuf;

use clap::Args;
use ncp_core::ncp::rng::{derive_seed, EntityRng};
use ncp_core::ncp::{DriverParams, OnExhausted, RoundParams, Schedule, Slack, ThresholdProfile, DEFAULT_MAX_RESTARTS, DEFAULT_MAX_ROUNDS, DEFAULT_REGULARIZE_LIMIT};
use ncp_core::{Colour, CorrespondenceAssignment, Graph};
use rand::seq::SliceRandom;
use serde::Serialize;

use crate::config::{pick, Exhausted, FileConfig, Format, Maps, Profile};
use crate::error::{CliError, CliResult};
use crate::output::negotiate;
use crate::source::load_graph;

pub const DEFAULT_TAU: f64 = 0.5;
pub const DEFAULT_SLACK_C: f64 = 3.0;
const TAG_MAPS: u64 = 0x6d61_7073;

pub fn need<T>(flag: Option<T>, file: Option<T>, name: &str) -> CliResult<T> {
    flag.or(file)
        .ok_or_else(|| CliError::Usage(format!("--{name} is required (flag or config key)")))
}

#[derive(Args, Debug, Clone, Default)]
pub struct SourceArgs {
    /// Graph file; `.json` is read as JSON, anything else as DIMACS.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generator spec, e.g. `c5-blowup:3`, `random-regular:200,20`,
    /// `gnp:30,0.2`, `cycle:5`, `complete:6`, `path:4`, `star:5`, `petersen`.
    #[arg(long)]
    pub gen: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct SourceConfig {
    pub input: Option<PathBuf>,
    pub gen: Option<String>,
}

impl SourceArgs {
    pub fn resolve(&self, file: &FileConfig) -> SourceConfig {
        // a source given on the command line replaces the file's source
        // entirely, so the two never combine into an ambiguous pair
        if self.input.is_some() || self.gen.is_some() {
            SourceConfig {
                input: self.input.clone(),
                gen: self.gen.clone(),
            }
        } else {
            SourceConfig {
                input: file.input.clone(),
                gen: file.gen.clone(),
            }
        }
    }
}

impl SourceConfig {
    pub fn load(&self, seed: u64) -> CliResult<Graph> {
        load_graph(self.input.as_ref(), self.gen.as_ref(), seed)
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutArgs {
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides the format implied by the `--out` extension.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutArgs {
    pub fn resolve(&self, file: &FileConfig, default: Format) -> (Option<PathBuf>, Format) {
        let out = self.out.clone().or_else(|| file.out.clone());
        let format = negotiate(self.format.or(file.format), out.as_deref(), default);
        (out, format)
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct AssignArgs {
    /// Uniform lists `{0, .., k-1}` on every vertex.
    #[arg(long)]
    pub k: Option<usize>,
    /// Correspondence assignment as JSON.
    #[arg(long)]
    pub assignment: Option<PathBuf>,
    /// Edge maps for `--k` lists.
    #[arg(long, value_enum)]
    pub maps: Option<Maps>,
}

#[derive(Serialize, Debug, Clone)]
pub struct AssignConfig {
    pub k: Option<usize>,
    pub assignment: Option<PathBuf>,
    pub maps: Option<Maps>,
}

impl AssignArgs {
    pub fn resolve(&self, file: &FileConfig) -> AssignConfig {
        let (k, assignment) = if self.k.is_some() || self.assignment.is_some() {
            (self.k, self.assignment.clone())
        } else {
            (file.k, file.assignment.clone())
        };
        let maps = k.map(|_| pick(self.maps, file.maps, Maps::Identity));
        AssignConfig { k, assignment, maps }
    }
}

impl AssignConfig {
    pub fn build(&self, g: &Graph, seed: u64) -> CliResult<CorrespondenceAssignment> {
        match (self.k, &self.assignment) {
            (Some(_), Some(_)) => Err(CliError::Usage("give either --k or --assignment, not both".into())),
            (None, None) => Err(CliError::Usage("colours are required: pass --k K or --assignment PATH".into())),
            (Some(k), None) => match self.maps.unwrap_or(Maps::Identity) {
                Maps::Identity => Ok(CorrespondenceAssignment::uniform_lists(g, k)?),
                Maps::Random => random_maps(g, k, seed),
            },
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                CorrespondenceAssignment::from_json(g, &text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
            }
        }
    }
}

/// Lists `{0, .., k-1}` with an independent uniform bijection on each edge.
pub fn random_maps(g: &Graph, k: usize, seed: u64) -> CliResult<CorrespondenceAssignment> {
    let mut rng = EntityRng::new(derive_seed(seed, 0, TAG_MAPS), TAG_MAPS);
    let palette: Vec<Colour> = (0..k as Colour).collect();
    let maps = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &uv)| {
            let mut image = palette.clone();
            image.shuffle(rng.at(e as u64));
            (uv, palette.iter().copied().zip(image).collect())
        })
        .collect();
    Ok(CorrespondenceAssignment::new(g, vec![palette; g.n()], maps)?)
}

#[derive(Args, Debug, Clone, Default)]
pub struct DriverArgs {
    /// Bad-event thresholds: the paper's, or scaled for small degrees.
    #[arg(long, value_enum)]
    pub profile: Option<Profile>,
    /// Scale on the paper's `A_u` threshold under `--profile practical`.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Constant `c` in the `c √(Δ ln Δ)` slack under `--profile practical`.
    #[arg(long)]
    pub slack_c: Option<f64>,
    #[arg(long)]
    pub max_restarts: Option<usize>,
    /// Round cap when no schedule is given.
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// What to do when every restart of a round hits a bad event.
    #[arg(long, value_enum)]
    pub on_exhausted: Option<Exhausted>,
}

#[derive(Serialize, Debug, Clone)]
#[serde(rename_all = "camelCase")]
pub struct DriverConfig {
    pub profile: Profile,
    pub tau: f64,
    pub slack_c: f64,
    pub max_restarts: usize,
    pub max_rounds: usize,
    pub on_exhausted: Exhausted,
}

impl DriverArgs {
    pub fn resolve(&self, file: &FileConfig) -> CliResult<DriverConfig> {
        let d = DriverConfig {
            profile: pick(self.profile, file.profile, Profile::Paper),
            tau: pick(self.tau, file.tau, DEFAULT_TAU),
            slack_c: pick(self.slack_c, file.slack_c, DEFAULT_SLACK_C),
            max_restarts: pick(self.max_restarts, file.max_restarts, DEFAULT_MAX_RESTARTS),
            max_rounds: pick(self.max_rounds, file.max_rounds, DEFAULT_MAX_ROUNDS),
            on_exhausted: pick(self.on_exhausted, file.on_exhausted, Exhausted::Fail),
        };
        if !(d.tau.is_finite() && d.tau >= 0.0) {
            return Err(CliError::Usage(format!("tau = {} must be non-negative", d.tau)));
        }
        if !(d.slack_c.is_finite() && d.slack_c > 0.0) {
            return Err(CliError::Usage(format!("slack-c = {} must be positive", d.slack_c)));
        }
        if d.max_restarts == 0 {
            return Err(CliError::Usage("max-restarts must be at least 1".into()));
        }
        Ok(d)
    }
}

impl DriverConfig {
    pub fn params(&self, schedule: Option<Schedule>) -> DriverParams {
        let (thresholds, slack) = match self.profile {
            Profile::Paper => (ThresholdProfile::Paper, Slack::Paper),
            Profile::Practical => (
                ThresholdProfile::Practical { tau: self.tau },
                Slack::Practical { c: self.slack_c },
            ),
        };
        DriverParams {
            round: RoundParams {
                thresholds,
                slack,
                max_restarts: self.max_restarts,
                ..RoundParams::default()
            },
            schedule,
            max_rounds: self.max_rounds,
            on_exhausted: match self.on_exhausted {
                Exhausted::Fail => OnExhausted::Fail,
                Exhausted::UseBest => OnExhausted::UseBest,
            },
            regularize_limit: DEFAULT_REGULARIZE_LIMIT,
        }
    }
}

/// Graph size fields shared by reports.
#[derive(Serialize, Debug, Clone)]
#[serde(rename_all = "camelCase")]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
        }
    }
}
