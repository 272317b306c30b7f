use std::path::PathBuf;

use clap::{ArgGroup, Args};
use ncp_core::graph::io::{to_dimacs, to_json};
use serde::Serialize;

use crate::config::{pick, FileConfig};
use crate::error::{CliError, CliResult};
use crate::output::{emit, VERSION};
use crate::source::GenSpec;

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("family").args([
    "c5_blowup", "random_regular", "gnp", "cycle", "complete", "path", "star", "petersen", "spec",
])))]
pub struct GenArgs {
    /// Five groups of `K` vertices joined cyclically.
    #[arg(long, value_name = "K")]
    pub c5_blowup: Option<usize>,
    #[arg(long, value_name = "N,D")]
    pub random_regular: Option<String>,
    #[arg(long, value_name = "N,P")]
    pub gnp: Option<String>,
    #[arg(long, value_name = "N")]
    pub cycle: Option<usize>,
    #[arg(long, value_name = "N")]
    pub complete: Option<usize>,
    #[arg(long, value_name = "N")]
    pub path: Option<usize>,
    #[arg(long, value_name = "LEAVES")]
    pub star: Option<usize>,
    #[arg(long)]
    pub petersen: bool,
    /// A generator spec in `--gen` syntax.
    #[arg(long)]
    pub spec: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Graph path; `.json` writes JSON, anything else DIMACS. Stdout gets
    /// DIMACS.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct GenConfig<'a> {
    gen: &'a str,
    seed: u64,
}

impl GenArgs {
    fn spec(&self, file: &FileConfig) -> CliResult<String> {
        let s = if let Some(k) = self.c5_blowup {
            format!("c5-blowup:{k}")
        } else if let Some(x) = &self.random_regular {
            format!("random-regular:{x}")
        } else if let Some(x) = &self.gnp {
            format!("gnp:{x}")
        } else if let Some(n) = self.cycle {
            format!("cycle:{n}")
        } else if let Some(n) = self.complete {
            format!("complete:{n}")
        } else if let Some(n) = self.path {
            format!("path:{n}")
        } else if let Some(n) = self.star {
            format!("star:{n}")
        } else if self.petersen {
            "petersen".into()
        } else if let Some(s) = self.spec.clone().or_else(|| file.gen.clone()) {
            s
        } else {
            return Err(CliError::Usage("gen needs a graph family, e.g. --c5-blowup 3".into()));
        };
        Ok(s)
    }
}

pub fn run(args: &GenArgs, file: &FileConfig) -> CliResult<()> {
    let spec = args.spec(file)?;
    let seed = pick(args.seed, file.seed, 0);
    let g = GenSpec::parse(&spec)?.build(seed)?;
    let out = args.out.clone().or_else(|| file.out.clone());
    let json = out
        .as_ref()
        .and_then(|p| p.extension())
        .is_some_and(|e| e == "json");
    let text = if json {
        to_json(&g)
    } else {
        let cfg = serde_json::to_string(&GenConfig { gen: &spec, seed }).expect("config serializes");
        format!("c ncp {VERSION} gen\nc config {cfg}\n{}", to_dimacs(&g))
    };
    emit(out.as_ref(), &text)
}
