//! Text formats: DIMACS `.col`, plain edge lists and DOT export.
//!
//! DIMACS files are 1-indexed (`p edge n m` followed by `e u v` lines).
//! Edge lists are 0-indexed, one `u v` pair per line; a line with a single
//! token declares an isolated vertex, and `#`/`%` start comments. If every
//! label in an edge list is an integer the labels are used as ids directly,
//! otherwise labels are numbered in order of first appearance.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{norm, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    DimacsCol,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dimacs" | "dimacs-col" | "col" => Ok(Format::DimacsCol),
            "edgelist" | "edge-list" => Ok(Format::EdgeList),
            other => Err(Error::InvalidArgument(format!("unknown graph format '{other}'"))),
        }
    }
}

/// A parsed graph plus the original label of every dense vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parsed {
    pub graph: Graph,
    pub labels: Vec<String>,
}

pub fn parse_graph(text: &str, format: Format) -> Result<Parsed> {
    match format {
        Format::DimacsCol => parse_dimacs(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_dimacs(text: &str) -> Result<Parsed> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line_no, "second problem line"));
                }
                let kind = tok.next().ok_or_else(|| parse_err(line_no, "missing format"))?;
                if kind != "edge" && kind != "col" {
                    return Err(parse_err(line_no, format!("unsupported problem type '{kind}'")));
                }
                let n = parse_num(tok.next(), line_no, "vertex count")?;
                let m = parse_num(tok.next(), line_no, "edge count")?;
                if tok.next().is_some() {
                    return Err(parse_err(line_no, "trailing tokens"));
                }
                header = Some((n, m, line_no));
            }
            Some("e") => {
                let (n, _, _) = header.ok_or_else(|| parse_err(line_no, "edge before problem line"))?;
                let u = parse_num(tok.next(), line_no, "endpoint")?;
                let v = parse_num(tok.next(), line_no, "endpoint")?;
                if tok.next().is_some() {
                    return Err(parse_err(line_no, "trailing tokens"));
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(line_no, format!("vertex out of range 1..={n}")));
                }
                if u == v {
                    return Err(Error::Loop { line: line_no, v: u - 1 });
                }
                if !seen.insert(norm(u - 1, v - 1)) {
                    return Err(Error::DuplicateEdge {
                        line: line_no,
                        u: u - 1,
                        v: v - 1,
                    });
                }
            }
            Some(other) => return Err(parse_err(line_no, format!("unknown line type '{other}'"))),
            None => {}
        }
    }
    let (n, m, p_line) = header.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if seen.len() != m {
        return Err(parse_err(
            p_line,
            format!("problem line declares {m} edges, found {}", seen.len()),
        ));
    }
    let graph = Graph::from_edges(n, seen)?;
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Ok(Parsed { graph, labels })
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let t = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| parse_err(line, format!("bad {what} '{t}'")))
}

fn parse_edge_list(text: &str) -> Result<Parsed> {
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() > 2 {
            return Err(parse_err(i + 1, "expected 'u v' or a single vertex"));
        }
        rows.push((i + 1, toks));
    }
    let numeric = rows
        .iter()
        .all(|(_, t)| t.iter().all(|s| s.parse::<usize>().is_ok()));

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut id_of = |s: &str| -> usize {
        if numeric {
            s.parse().unwrap()
        } else {
            *ids.entry(s.to_string()).or_insert_with(|| {
                labels.push(s.to_string());
                labels.len() - 1
            })
        }
    };
    let mut n = 0;
    let mut seen = BTreeSet::new();
    for (line, toks) in &rows {
        let a = id_of(toks[0]);
        n = n.max(a + 1);
        if toks.len() == 2 {
            let b = id_of(toks[1]);
            n = n.max(b + 1);
            if a == b {
                return Err(Error::Loop { line: *line, v: a });
            }
            if !seen.insert(norm(a, b)) {
                return Err(Error::DuplicateEdge { line: *line, u: a, v: b });
            }
        }
    }
    if numeric {
        labels = (0..n).map(|i| i.to_string()).collect();
    }
    let graph = Graph::from_edges(n, seen)?;
    Ok(Parsed { graph, labels })
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("# vertices {}\n", g.n());
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            writeln!(s, "{v}").unwrap();
        }
    }
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::DimacsCol => write_dimacs(g),
        Format::EdgeList => write_edge_list(g),
    }
}

/// Graphviz export; `classes` optionally colors vertices by class index.
pub fn write_dot(g: &Graph, classes: Option<&[usize]>) -> String {
    const PALETTE: [&str; 8] = [
        "lightblue", "salmon", "palegreen", "gold", "plum", "orange", "cyan", "gray",
    ];
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        match classes {
            Some(c) => writeln!(
                s,
                "  {v} [style=filled, fillcolor={}];",
                PALETTE[c[v] % PALETTE.len()]
            )
            .unwrap(),
            None => writeln!(s, "  {v};").unwrap(),
        }
    }
    for &(u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::complete;

    #[test]
    fn dimacs_triangle() {
        let p = parse_graph("c tri\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", Format::DimacsCol).unwrap();
        assert_eq!(p.graph, complete(3));
        assert_eq!(p.labels, vec!["1", "2", "3"]);
    }

    #[test]
    fn edge_list_single_edge() {
        let p = parse_graph("0 1\n", Format::EdgeList).unwrap();
        assert_eq!(p.graph, complete(2));
    }

    #[test]
    fn loop_rejected_with_line() {
        let e = parse_graph("p edge 2 1\ne 1 1\n", Format::DimacsCol).unwrap_err();
        assert_eq!(e, Error::Loop { line: 2, v: 0 });
        let e = parse_graph("0 1\n2 2\n", Format::EdgeList).unwrap_err();
        assert!(matches!(e, Error::Loop { line: 2, .. }));
    }

    #[test]
    fn duplicate_rejected() {
        let e = parse_graph("p edge 2 2\ne 1 2\ne 2 1\n", Format::DimacsCol).unwrap_err();
        assert!(matches!(e, Error::DuplicateEdge { line: 3, .. }));
    }

    #[test]
    fn malformed_lines_report_numbers() {
        let e = parse_graph("p edge 3 1\ne 1 x\n", Format::DimacsCol).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_graph("p edge 3 1\ne 1 4\n", Format::DimacsCol).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_graph("0 1 2\n", Format::EdgeList).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_graph("e 1 2\n", Format::DimacsCol).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_graph("p edge 3 2\ne 1 2\n", Format::DimacsCol).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn string_labels_are_mapped() {
        let p = parse_graph("a b\nb c\nd\n", Format::EdgeList).unwrap();
        assert_eq!(p.labels, vec!["a", "b", "c", "d"]);
        assert_eq!(p.graph.n(), 4);
        assert_eq!(p.graph.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn isolated_vertices_survive_edge_list() {
        let g = Graph::from_edges(5, [(0, 2)]).unwrap();
        let back = parse_graph(&write_edge_list(&g), Format::EdgeList).unwrap();
        assert_eq!(back.graph, g);
    }

    #[test]
    fn dot_mentions_every_edge() {
        let d = write_dot(&complete(3), Some(&[0, 1, 0]));
        assert_eq!(d.matches("--").count(), 3);
    }
}
