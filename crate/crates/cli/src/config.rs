//! TOML run configuration. Every key is optional; a flag given on the command
//! line wins over the file, and the file wins over the built-in default.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Paper,
    Practical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Maps {
    /// Every edge maps colour `c` to `c`: plain list colouring.
    Identity,
    /// A seeded random bijection on each edge.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Exhausted {
    Fail,
    UseBest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Ours,
    BruhnJoos,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub gen: Option<String>,
    pub assignment: Option<PathBuf>,
    pub maps: Option<Maps>,
    pub k: Option<usize>,
    pub eta: Option<f64>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub beta: Option<f64>,
    pub eps_prime: Option<f64>,
    pub delta_prime: Option<f64>,
    pub r0: Option<f64>,
    pub alpha: Option<f64>,
    pub grid: Option<f64>,
    pub variant: Option<Variant>,
    pub trials: Option<u64>,
    pub rounds: Option<usize>,
    pub max_restarts: Option<usize>,
    pub max_rounds: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub profile: Option<Profile>,
    pub tau: Option<f64>,
    pub slack_c: Option<f64>,
    pub on_exhausted: Option<Exhausted>,
    pub schedule: Option<bool>,
    pub engine: Option<bool>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

/// Flag, then file, then default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
