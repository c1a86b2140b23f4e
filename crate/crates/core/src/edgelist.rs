//! Plain-text edge-list format.
//!
//! First line `n m`, then `m` lines `u v`, whitespace separated. The writer
//! emits edges in canonical sorted order with `u < v`; the parser accepts
//! endpoints in either order and collapses duplicate lines.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: expected {expected}, got {got:?}")]
    Malformed {
        line: usize,
        expected: &'static str,
        got: String,
    },
    #[error("header declares {declared} edges but {found} edge lines follow")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn parse(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());

    let (_, header) = lines.next().ok_or(EdgeListError::MissingHeader)?;
    let mut fields = header.split_whitespace();
    let n = parse_field(&mut fields, header, 1, "header `n m`")?;
    let m = parse_field(&mut fields, header, 1, "header `n m`")?;
    if fields.next().is_some() {
        return Err(EdgeListError::Malformed {
            line: 1,
            expected: "header `n m`",
            got: header.to_string(),
        });
    }

    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let lineno = idx + 1;
        let mut fields = line.split_whitespace();
        let u = parse_field(&mut fields, line, lineno, "edge line `u v`")?;
        let v = parse_field(&mut fields, line, lineno, "edge line `u v`")?;
        if fields.next().is_some() {
            return Err(EdgeListError::Malformed {
                line: lineno,
                expected: "edge line `u v`",
                got: line.to_string(),
            });
        }
        edges.push((u, v));
    }

    if edges.len() != m {
        return Err(EdgeListError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }

    Ok(Graph::from_edge_list(n, &edges)?)
}

fn parse_field(
    fields: &mut std::str::SplitWhitespace<'_>,
    line: &str,
    lineno: usize,
    expected: &'static str,
) -> Result<usize, EdgeListError> {
    fields
        .next()
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| EdgeListError::Malformed {
            line: lineno,
            expected,
            got: line.to_string(),
        })
}

pub fn write(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
