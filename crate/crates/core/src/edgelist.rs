//! Plain-text edge-list format.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v
//! ...
//! ```
//!
//! Vertices are 0-based. Writers emit edges with `u < v` in lexicographic
//! order, one per line, newline-terminated.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), ParseError> {
    let syntax = |message: String| ParseError::Syntax { line: lineno, message };
    let mut fields = line.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = fields
            .next()
            .ok_or_else(|| syntax("expected two integers".into()))?;
        tok.parse()
            .map_err(|_| syntax(format!("not a nonnegative integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if fields.next().is_some() {
        return Err(syntax("expected exactly two integers".into()));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(header, hline)?;
    let edges = lines
        .map(|(i, l)| parse_pair(l, i))
        .collect::<Result<Vec<_>, _>>()?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Single-line form `"n m u1 v1 u2 v2 ..."` used in census files.
pub fn write_one_line(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        write!(out, " {u} {v}").unwrap();
    }
    out
}

pub fn parse_one_line(line: &str) -> Result<Graph, ParseError> {
    let nums = line
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| ParseError::Syntax {
                line: 1,
                message: format!("not a nonnegative integer: {t:?}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() < 2 {
        return Err(ParseError::MissingHeader);
    }
    let (n, m) = (nums[0], nums[1]);
    let rest = &nums[2..];
    if rest.len() % 2 != 0 || rest.len() / 2 != m {
        return Err(ParseError::EdgeCount { expected: m, found: rest.len() / 2 });
    }
    let edges: Vec<_> = rest.chunks(2).map(|c| (c[0], c[1])).collect();
    Ok(Graph::new(n, &edges)?)
}
