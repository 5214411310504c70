use std::fmt::Write as _;

use super::ExclusivityGraph;
use crate::error::{Error, Result};

/// Parses `n <count>` followed by one `u v` edge per line (0-based).
/// Blank lines and `#` comments are ignored.
pub fn parse_graph(text: &str) -> Result<ExclusivityGraph> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut graph: Option<ExclusivityGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let Some(g) = graph.as_mut() else {
            if fields.next() != Some("n") {
                return Err(err(line_no, "expected `n <count>` header".into()));
            }
            let n: usize = fields
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(line_no, "invalid vertex count".into()))?;
            if fields.next().is_some() {
                return Err(err(line_no, "trailing tokens after vertex count".into()));
            }
            graph = Some(ExclusivityGraph::new(n));
            continue;
        };
        let ends: Vec<usize> = fields
            .map(|s| s.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err(line_no, format!("invalid edge `{line}`")))?;
        let [u, v] = ends[..] else {
            return Err(err(line_no, format!("edge needs two endpoints: `{line}`")));
        };
        g.add_edge(u, v).map_err(|e| err(line_no, e.to_string()))?;
    }
    graph.ok_or_else(|| err(0, "missing `n <count>` header".into()))
}

pub fn serialize_graph(g: &ExclusivityGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
