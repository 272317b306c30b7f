//! Where a graph comes from: a file, or a generator spec such as
//! `random-regular:200,20`.

use std::path::{Path, PathBuf};

use ncp_core::graph::{generators, io};
use ncp_core::strong_edge::c5_blowup;
use ncp_core::Graph;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    C5Blowup(usize),
    RandomRegular(usize, usize),
    Gnp(usize, f64),
    Cycle(usize),
    Complete(usize),
    Path(usize),
    Star(usize),
    Petersen,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn num<T: std::str::FromStr>(s: &str, spec: &str) -> CliResult<T> {
    s.trim()
        .parse()
        .map_err(|_| usage(format!("generator spec {spec:?}: cannot parse {s:?}")))
}

impl GenSpec {
    pub fn parse(spec: &str) -> CliResult<Self> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let args: Vec<&str> = if args.is_empty() { Vec::new() } else { args.split(',').collect() };
        let want = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(usage(format!("generator spec {spec:?}: {name} takes {n} argument(s)")))
            }
        };
        let parsed = match name {
            "c5-blowup" => {
                want(1)?;
                GenSpec::C5Blowup(num(args[0], spec)?)
            }
            "random-regular" => {
                want(2)?;
                GenSpec::RandomRegular(num(args[0], spec)?, num(args[1], spec)?)
            }
            "gnp" => {
                want(2)?;
                GenSpec::Gnp(num(args[0], spec)?, num(args[1], spec)?)
            }
            "cycle" => {
                want(1)?;
                GenSpec::Cycle(num(args[0], spec)?)
            }
            "complete" => {
                want(1)?;
                GenSpec::Complete(num(args[0], spec)?)
            }
            "path" => {
                want(1)?;
                GenSpec::Path(num(args[0], spec)?)
            }
            "star" => {
                want(1)?;
                GenSpec::Star(num(args[0], spec)?)
            }
            "petersen" => {
                want(0)?;
                GenSpec::Petersen
            }
            _ => return Err(usage(format!("unknown generator {name:?}"))),
        };
        Ok(parsed)
    }

    pub fn build(&self, seed: u64) -> CliResult<Graph> {
        Ok(match *self {
            GenSpec::C5Blowup(k) => c5_blowup(k)?,
            GenSpec::RandomRegular(n, d) => generators::random_regular(n, d, seed)?,
            GenSpec::Gnp(n, p) => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(usage(format!("gnp probability {p} must lie in [0, 1]")));
                }
                generators::gnp(n, p, seed)
            }
            GenSpec::Cycle(n) => {
                if n < 3 {
                    return Err(usage("cycle needs at least 3 vertices"));
                }
                generators::cycle(n)
            }
            GenSpec::Complete(n) => generators::complete(n),
            GenSpec::Path(n) => generators::path(n),
            GenSpec::Star(n) => generators::star(n),
            GenSpec::Petersen => generators::petersen(),
        })
    }
}

/// Exactly one of `input` and `gen` must be set.
pub fn load_graph(input: Option<&PathBuf>, gen: Option<&String>, seed: u64) -> CliResult<Graph> {
    match (input, gen) {
        (Some(_), Some(_)) => Err(usage("give either --input or --gen, not both")),
        (None, None) => Err(usage("a graph is required: pass --input PATH or --gen SPEC")),
        (Some(path), None) => read(path),
        (None, Some(spec)) => GenSpec::parse(spec)?.build(seed),
    }
}

fn read(path: &Path) -> CliResult<Graph> {
    io::read_graph(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}
