//! Edge lists, DIMACS graphs and cover output.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Edge tokens of an edge-list file, comments stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeListDocument {
    pub edges: Vec<(String, String)>,
}

impl EdgeListDocument {
    /// Lines starting with `#` or `%` are comments; every other nonblank line
    /// holds two whitespace-separated labels (extra columns are ignored).
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match (tokens.next(), tokens.next()) {
                (Some(u), Some(v)) => edges.push((u.to_string(), v.to_string())),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("expected two vertex labels, got {line:?}"),
                    })
                }
            }
        }
        Ok(EdgeListDocument { edges })
    }

    /// Dense ids in order of first appearance.
    pub fn into_graph(self) -> LabeledGraph {
        let mut ids: HashMap<String, Vertex> = HashMap::new();
        let mut labels = Vec::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut id = |label: String, labels: &mut Vec<String>| -> Vertex {
            *ids.entry(label.clone()).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            })
        };
        for (u, v) in self.edges {
            let a = id(u, &mut labels);
            let b = id(v, &mut labels);
            edges.push((a, b));
        }
        LabeledGraph {
            graph: Graph::from_edges(labels.len(), &edges),
            labels,
        }
    }
}

/// A graph whose vertices carry the labels used in the input file.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    /// Labels `1..=n`.
    pub fn numbered(graph: Graph) -> Self {
        let labels = (1..=graph.n_total()).map(|i| i.to_string()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }
}

pub fn parse_edge_list(text: &str) -> Result<LabeledGraph> {
    Ok(EdgeListDocument::parse(text)?.into_graph())
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    token
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected {what}"),
        })
}

/// DIMACS `p edge n m` / `e u v` with `c` comments. With `complement` the
/// complement graph is built explicitly.
pub fn parse_dimacs(text: &str, complement: bool) -> Result<LabeledGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "second problem line".into(),
                    });
                }
                let kind = tokens.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected 'p edge n m'".into(),
                    });
                }
                n = Some(number(tokens.next(), line_no, "vertex count")?);
                number(tokens.next(), line_no, "edge count")?;
            }
            Some("e") => {
                let Some(count) = n else {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "edge before problem line".into(),
                    });
                };
                let u = number(tokens.next(), line_no, "endpoint")?;
                let v = number(tokens.next(), line_no, "endpoint")?;
                for index in [u, v] {
                    if index == 0 || index > count {
                        return Err(Error::VertexOutOfRange {
                            line: line_no,
                            index,
                            n: count,
                        });
                    }
                }
                edges.push((u - 1, v - 1));
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unrecognized line {line:?}"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing problem line".into(),
    })?;
    let mut graph = Graph::from_edges(n, &edges);
    if complement {
        let mut comp = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !graph.has_edge(u, v) {
                    comp.push((u, v));
                }
            }
        }
        graph = Graph::from_edges(n, &comp);
    }
    Ok(LabeledGraph::numbered(graph))
}

/// One `u v` line per edge, using labels.
pub fn write_edge_list(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for (u, v) in g.graph.edges() {
        out.push_str(&format!("{} {}\n", g.labels[u], g.labels[v]));
    }
    out
}

/// Size on the first line, then one label per line.
pub fn write_cover(labels: &[String], cover: &[Vertex]) -> String {
    let mut out = format!("{}\n", cover.len());
    for &v in cover {
        out.push_str(&labels[v]);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_path() {
        let g = parse_edge_list("1 2\n2 3\n").unwrap();
        assert_eq!(g.graph.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.labels, vec!["1", "2", "3"]);
    }

    #[test]
    fn edge_list_comments_loops_and_duplicates() {
        let g = parse_edge_list("# c\n% c\n\na b\nb a\nc c\nb c\n").unwrap();
        assert_eq!(g.graph.n_total(), 3);
        assert_eq!(g.graph.edge_count(), 2);
    }

    #[test]
    fn edge_list_malformed_line() {
        match parse_edge_list("1 2\n3\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimacs_triangle_and_complement() {
        let text = "c k3\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        assert_eq!(parse_dimacs(text, false).unwrap().graph.edge_count(), 3);
        let comp = parse_dimacs(text, true).unwrap();
        assert_eq!(comp.graph.n_total(), 3);
        assert_eq!(comp.graph.edge_count(), 0);
    }

    #[test]
    fn dimacs_out_of_range() {
        match parse_dimacs("p edge 2 1\ne 1 3\n", false) {
            Err(Error::VertexOutOfRange {
                line: 2,
                index: 3,
                n: 2,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cover_output() {
        let labels: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(write_cover(&labels, &[1]), "1\ny\n");
    }
}
