//! File formats, instance generators, the OCT reduction and brute-force oracles.

pub mod brute;
pub mod gadget;
pub mod generate;
pub mod oct;
pub mod parse;

pub use parse::{parse_dimacs, parse_edge_list, write_cover, write_edge_list, LabeledGraph};

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
    /// A 3-CNF formula, turned into its gadget graph.
    Cnf,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" | "edges" | "txt" => Some(Format::EdgeList),
            "dimacs" | "clq" | "col" => Some(Format::Dimacs),
            "cnf" => Some(Format::Cnf),
            _ => None,
        }
    }

    /// Guess from the file extension; anything unknown is an edge list.
    pub fn from_path(path: &Path) -> Format {
        path.extension()
            .and_then(|e| e.to_str())
            .and_then(Format::parse)
            .unwrap_or(Format::EdgeList)
    }
}

pub fn parse_text(text: &str, format: Format, complement: bool) -> Result<LabeledGraph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text, complement),
        Format::Cnf => gadget::parse_cnf_gadget(text),
    }
}

pub fn read_instance(
    path: &Path,
    format: Option<Format>,
    complement: bool,
) -> Result<LabeledGraph> {
    let text = std::fs::read_to_string(path).map_err(Error::Io)?;
    parse_text(
        &text,
        format.unwrap_or_else(|| Format::from_path(path)),
        complement,
    )
}
