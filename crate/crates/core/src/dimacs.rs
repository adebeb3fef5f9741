//! DIMACS `.col` graphs (`p edge <n> <m>` / `e <u> <v>`, 1-based) and
//! `v <vertex> <color>` coloring files.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::recolor::PartialColoring;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_index(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("invalid {what} {tok:?}")))
}

fn vertex(tok: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let v = parse_index(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Reads a DIMACS graph. Comment lines (`c`) and blank lines are skipped;
/// `p col` is accepted as a synonym of `p edge`. The edge count in the
/// problem line is not enforced since many files list edges twice.
pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(lineno, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge" | "col") => {}
                    other => return Err(parse_err(lineno, format!("unsupported problem format {other:?}"))),
                }
                n = Some(parse_index(toks.next(), lineno, "vertex count")?);
                parse_index(toks.next(), lineno, "edge count")?;
            }
            Some("e") => {
                let n = n.ok_or_else(|| parse_err(lineno, "edge before problem line"))?;
                let u = vertex(toks.next(), n, lineno)?;
                let v = vertex(toks.next(), n, lineno)?;
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop at vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            Some(other) => return Err(parse_err(lineno, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing problem line"))?;
    Graph::from_edges(n, edges)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    read_graph(text.as_bytes())
}

/// Writes `p edge n m` followed by the edges in sorted order.
pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "p edge {} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

/// Writes one `v <vertex> <color>` line per colored vertex, ascending.
pub fn write_coloring<W: Write>(c: &PartialColoring, mut out: W) -> Result<()> {
    for (v, color) in c.iter() {
        writeln!(out, "v {} {}", v + 1, color)?;
    }
    Ok(())
}

pub fn coloring_to_string(c: &PartialColoring) -> String {
    let mut buf = Vec::new();
    write_coloring(c, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("coloring output is ASCII")
}

/// Reads `v <vertex> <color>` lines for a graph on `n` vertices.
pub fn read_coloring<R: BufRead>(reader: R, n: usize) -> Result<PartialColoring> {
    let mut c = PartialColoring::new(n);
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("v") => {
                let v = vertex(toks.next(), n, lineno)?;
                let color = parse_index(toks.next(), lineno, "color")?;
                if color == 0 {
                    return Err(parse_err(lineno, "colors start at 1"));
                }
                if c.get(v).is_some() {
                    return Err(parse_err(lineno, format!("vertex {} colored twice", v + 1)));
                }
                c.set(v, color);
            }
            Some(other) => return Err(parse_err(lineno, format!("unknown line type {other:?}"))),
        }
    }
    Ok(c)
}
