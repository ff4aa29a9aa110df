//! File formats: plain-text edge lists and JSON for colourings,
//! decompositions and stage-one dumps.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coloring::{PartialEdgeColoring, Stage};
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::pipeline::{StageOneResult, StageOneSummary};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// `n m` on the first line, then `m` lines `u v`. Blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| parse_error(1, "missing header line \"n m\""))?;
    let nums = parse_pair(first, header)?;
    let (n, m) = (nums.0, nums.1);
    let mut pairs = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        if u == v {
            return Err(parse_error(line, format!("loop at vertex {u}")));
        }
        for w in [u, v] {
            if w >= n {
                return Err(parse_error(line, format!("vertex {w} out of range for n = {n}")));
            }
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_error(line, format!("duplicate edge ({}, {})", u.min(v), u.max(v))));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(parse_error(1, format!("header announces {m} edges, found {}", pairs.len())));
    }
    Graph::from_edge_list(n, &pairs)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_error(line, "expected two integers"))?;
        tok.parse().map_err(|_| parse_error(line, format!("not a nonnegative integer: {tok:?}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(parse_error(line, "expected exactly two integers"));
    }
    Ok(pair)
}

pub fn edge_list_to_string(graph: &Graph) -> String {
    let mut s = String::with_capacity(12 * (graph.edge_count() + 1));
    writeln!(s, "{} {}", graph.vertex_count(), graph.edge_count()).unwrap();
    for e in graph.edges() {
        writeln!(s, "{} {}", e.u, e.v).unwrap();
    }
    s
}

pub fn read_edge_list_file(path: &Path) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn write_edge_list_file(graph: &Graph, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, edge_list_to_string(graph))?)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Palettes {
    #[serde(default)]
    pub stage1: Vec<u32>,
    #[serde(default)]
    pub stage2: Vec<u32>,
    #[serde(default)]
    pub completion: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringFile {
    pub n: usize,
    pub edges: Vec<(usize, usize, Option<u32>)>,
    #[serde(default)]
    pub palettes: Palettes,
}

impl ColoringFile {
    pub fn new(graph: &Graph, coloring: &PartialEdgeColoring) -> Result<Self> {
        coloring.check_owner(graph)?;
        Ok(ColoringFile {
            n: graph.vertex_count(),
            edges: graph.edges().iter().enumerate().map(|(i, e)| (e.u, e.v, coloring.get(i))).collect(),
            palettes: Palettes {
                stage1: coloring.palette(Stage::Stage1),
                stage2: coloring.palette(Stage::Stage2),
                completion: coloring.palette(Stage::Completion),
            },
        })
    }

    /// The colouring this file describes on `graph`. Every edge of the graph
    /// must be listed exactly once.
    pub fn into_coloring(self, graph: &Graph) -> Result<PartialEdgeColoring> {
        if self.n != graph.vertex_count() {
            return Err(Error::ColoringMismatch(format!("file has n = {}, graph has {}", self.n, graph.vertex_count())));
        }
        let mut colors = vec![None; graph.edge_count()];
        let mut listed = vec![false; graph.edge_count()];
        for (u, v, c) in self.edges {
            let e = EdgeId::new(u, v)?;
            let idx = graph.edge_index(e.u, e.v).ok_or(Error::NotAnEdge(e))?;
            if std::mem::replace(&mut listed[idx], true) {
                return Err(Error::DuplicateEdge(e));
            }
            colors[idx] = c;
        }
        if let Some(i) = listed.iter().position(|&b| !b) {
            return Err(Error::ColoringMismatch(format!("edge {} missing from colouring", graph.edge(i))));
        }
        let mut out = PartialEdgeColoring::from_colors(colors);
        out.reserve(Stage::Stage1, self.palettes.stage1)?;
        out.reserve(Stage::Stage2, self.palettes.stage2)?;
        out.reserve(Stage::Completion, self.palettes.completion)?;
        Ok(out)
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn coloring_to_json(graph: &Graph, coloring: &PartialEdgeColoring) -> Result<String> {
    to_json(&ColoringFile::new(graph, coloring)?)
}

pub fn coloring_from_json(graph: &Graph, text: &str) -> Result<PartialEdgeColoring> {
    serde_json::from_str::<ColoringFile>(text)?.into_coloring(graph)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub k: usize,
    pub classes: Vec<Vec<usize>>,
}

pub fn decomposition_to_json(d: &Decomposition) -> Result<String> {
    to_json(&DecompositionFile { k: d.k(), classes: d.class_indices() })
}

/// Each edge index of `graph` must appear in exactly one class.
pub fn decomposition_from_json(graph: &Graph, text: &str) -> Result<Decomposition> {
    let f: DecompositionFile = serde_json::from_str(text)?;
    if f.classes.len() != f.k {
        return Err(Error::InvalidArgument(format!("k = {} but {} classes listed", f.k, f.classes.len())));
    }
    let mut class_of = vec![u32::MAX; graph.edge_count()];
    for (c, members) in f.classes.iter().enumerate() {
        for &e in members {
            match class_of.get_mut(e) {
                Some(slot) if *slot == u32::MAX => *slot = c as u32,
                Some(_) => return Err(Error::InvalidArgument(format!("edge index {e} listed twice"))),
                None => return Err(Error::InvalidArgument(format!("edge index {e} out of range"))),
            }
        }
    }
    if let Some(e) = class_of.iter().position(|&c| c == u32::MAX) {
        return Err(Error::InvalidArgument(format!("edge index {e} in no class")));
    }
    Decomposition::new(f.k, class_of)
}

#[derive(Serialize)]
struct StageOneDump<'a> {
    #[serde(flatten)]
    summary: StageOneSummary,
    coloring: &'a ColoringFile,
}

pub fn stage1_dump_json(graph: &Graph, stage1: &StageOneResult) -> Result<String> {
    let coloring = ColoringFile::new(graph, &stage1.coloring)?;
    to_json(&StageOneDump { summary: stage1.summary(), coloring: &coloring })
}
