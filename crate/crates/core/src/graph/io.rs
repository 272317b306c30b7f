//! DIMACS (1-based) and JSON (0-based) graph formats.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Parses `p edge <n> <m>` / `e <u> <v>` text. Comments start with `c`.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err("second problem line".into()));
                }
                if fields.len() != 4 || (fields[1] != "edge" && fields[1] != "col") {
                    return Err(err(format!("expected `p edge <n> <m>`, got `{line}`")));
                }
                let n = parse_count(fields[2]).map_err(&err)?;
                let m = parse_count(fields[3]).map_err(&err)?;
                header = Some((n, m, line_no));
            }
            "e" => {
                let Some((n, _, _)) = header else {
                    return Err(err("edge line before problem line".into()));
                };
                if fields.len() != 3 {
                    return Err(err(format!("expected `e <u> <v>`, got `{line}`")));
                }
                let u = parse_count(fields[1]).map_err(&err)?;
                let v = parse_count(fields[2]).map_err(&err)?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(err(format!("vertex {w} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                let key = (u.min(v) - 1, u.max(v) - 1);
                if !seen.insert(key) {
                    return Err(err(format!("duplicate edge {u} {v}")));
                }
                edges.push(key);
            }
            other => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let (n, m, line) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing problem line".into(),
    })?;
    if m != edges.len() {
        return Err(Error::Parse {
            line,
            message: format!("header declares {m} edges but {} were given", edges.len()),
        });
    }
    Graph::from_edges(n, &edges)
}

fn parse_count(s: &str) -> std::result::Result<usize, String> {
    s.parse::<usize>()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph json serializes")
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    Graph::try_from(j)
}

/// Reads a graph, choosing the format by extension (`.json` or DIMACS).
pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    if is_json(path) {
        parse_json(&text)
    } else {
        parse_dimacs(&text)
    }
}

pub fn write_graph(g: &Graph, path: &Path) -> Result<()> {
    let text = if is_json(path) { to_json(g) } else { to_dimacs(g) };
    std::fs::write(path, text)?;
    Ok(())
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn parses_dimacs_with_comments() {
        let g = parse_dimacs("c a triangle\np edge 3 3\ne 1 2\ne 2 3\n\ne 3 1\n").unwrap();
        assert_eq!(g, generators::complete(3));
    }

    #[test]
    fn dimacs_errors_carry_line_numbers() {
        let dup = parse_dimacs("p edge 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, .. }), "{dup}");
        let lp = parse_dimacs("c\np edge 3 1\ne 2 2\n").unwrap_err();
        assert!(matches!(lp, Error::Parse { line: 3, .. }), "{lp}");
        let range = parse_dimacs("p edge 2 1\ne 0 1\n").unwrap_err();
        assert!(matches!(range, Error::Parse { line: 2, .. }));
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 3 2\ne 1 2\n").is_err());
    }

    #[test]
    fn json_uses_zero_based_ids() {
        let g = generators::path(3);
        assert_eq!(to_json(&g), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(parse_json(&to_json(&g)).unwrap(), g);
    }
}
