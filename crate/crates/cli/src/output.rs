//! Report rendering. JSON reports wrap the result with the tool version, the
//! command and its resolved configuration; CSV reports carry the same data
//! as leading `#` comment lines.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Format;
use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
struct Envelope<'a, C, R> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a C,
    result: &'a R,
}

/// `flag`, then the configured format, then the extension of `out`, then
/// `default`.
pub fn negotiate(explicit: Option<Format>, out: Option<&Path>, default: Format) -> Format {
    explicit
        .or_else(|| match out?.extension()?.to_str()? {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        })
        .unwrap_or(default)
}

pub fn json_report<C: Serialize, R: Serialize>(command: &str, config: &C, result: &R) -> String {
    let env = Envelope {
        tool: "ncp",
        version: VERSION,
        command,
        config,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

pub fn csv_report<C: Serialize>(command: &str, config: &C, header: &str, rows: &[String]) -> String {
    let mut s = format!(
        "# ncp {VERSION} {command}\n# config {}\n{header}\n",
        serde_json::to_string(config).expect("config serializes")
    );
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    s
}

pub fn no_csv(command: &str) -> CliError {
    CliError::Usage(format!("{command} has no CSV form; use --format json"))
}

pub fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}
