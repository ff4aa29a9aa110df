//! Random graphs `G(n, p)`, the degree-gap check, and the batch experiment.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats;
use crate::graph::Graph;
use crate::pipeline::{Mode, Overrides};
use crate::rng::{child_rng, derive_seed, tag};
use crate::solve::{color_graph, ColorOptions};

/// Each pair `u < v` is an edge independently with probability `p`; pairs
/// are drawn in lexicographic order from one stream.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} is not a probability")));
    }
    let mut rng = child_rng(seed, &[tag::GRAPH]);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeGap {
    pub delta: usize,
    #[serde(rename = "Delta")]
    pub delta_max: usize,
    /// `δ >= Δ - 2 sqrt(Δ) (ln Δ)^{3/4}`.
    pub gap_ok_34: bool,
    /// `δ >= Δ - 2 sqrt(Δ) log2 Δ`.
    pub gap_ok_log: bool,
}

pub fn gap_bound_34(delta_max: usize) -> f64 {
    let d = delta_max as f64;
    d - 2.0 * d.sqrt() * d.ln().powf(0.75)
}

pub fn gap_bound_log(delta_max: usize) -> f64 {
    let d = delta_max as f64;
    d - 2.0 * d.sqrt() * d.log2()
}

pub fn degree_gap_check(graph: &Graph) -> Result<DegreeGap> {
    if graph.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let delta = graph.min_degree()?;
    let delta_max = graph.max_degree()?;
    Ok(DegreeGap {
        delta,
        delta_max,
        gap_ok_34: delta as f64 >= gap_bound_34(delta_max),
        gap_ok_log: delta as f64 >= gap_bound_log(delta_max),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: Vec<usize>,
    pub p: Vec<f64>,
    pub seeds: Vec<u64>,
    pub mode: Mode,
    pub overrides: Overrides,
}

pub const CSV_HEADER: [&str; 13] = [
    "n",
    "p",
    "seed",
    "Delta",
    "delta",
    "mode",
    "status",
    "stage1_colors",
    "stage2_colors",
    "total_colors_ocf",
    "total_colors_proper",
    "resamples",
    "ms",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    #[serde(rename = "Delta")]
    pub delta_max: usize,
    pub delta: usize,
    pub mode: Mode,
    pub status: String,
    pub stage1_colors: Option<usize>,
    pub stage2_colors: Option<usize>,
    pub total_colors_ocf: Option<usize>,
    pub total_colors_proper: Option<usize>,
    pub resamples: Option<usize>,
    pub ms: u64,
}

/// Artifact paths of row `index` under `dir`.
pub fn row_artifacts(dir: &Path, index: usize) -> (PathBuf, PathBuf, PathBuf) {
    (
        dir.join(format!("row{index:04}.graph.txt")),
        dir.join(format!("row{index:04}.ocf.json")),
        dir.join(format!("row{index:04}.proper.json")),
    )
}

/// `(n, p, seed)` in config order: `n` outermost, seeds innermost.
pub fn experiment_cells(config: &ExperimentConfig) -> Vec<(usize, f64, u64)> {
    let mut out = Vec::new();
    for &n in &config.n {
        for &p in &config.p {
            for &seed in &config.seeds {
                out.push((n, p, seed));
            }
        }
    }
    out
}

fn run_row(index: usize, n: usize, p: f64, seed: u64, config: &ExperimentConfig, dir: Option<&Path>) -> ExperimentRow {
    let start = Instant::now();
    let mut row = ExperimentRow {
        n,
        p,
        seed,
        delta_max: 0,
        delta: 0,
        mode: config.mode,
        status: String::new(),
        stage1_colors: None,
        stage2_colors: None,
        total_colors_ocf: None,
        total_colors_proper: None,
        resamples: None,
        ms: 0,
    };
    let result = (|| -> Result<()> {
        let graph = gnp(n, p, derive_seed(seed, &[n as u64, p.to_bits(), tag::GRAPH]))?;
        row.delta_max = graph.max_degree_or_zero();
        row.delta = graph.min_degree().unwrap_or(0);
        let options = ColorOptions {
            mode: config.mode,
            overrides: config.overrides.clone(),
            seed: derive_seed(seed, &[n as u64, p.to_bits(), tag::PIPELINE]),
            proper: true,
        };
        let out = color_graph(&graph, &options)?;
        row.stage1_colors = Some(out.stage1_colors());
        row.stage2_colors = Some(out.stage2_colors());
        row.total_colors_ocf = Some(out.total_colors_ocf());
        row.total_colors_proper = out.total_colors_proper();
        row.resamples = Some(out.stage1.resamples);
        if let Some(dir) = dir {
            let (g, o, pr) = row_artifacts(dir, index);
            formats::write_edge_list_file(&graph, &g)?;
            std::fs::write(o, formats::coloring_to_json(&graph, &out.ocf)?)?;
            if let Some(proper) = &out.proper {
                std::fs::write(pr, formats::coloring_to_json(&graph, proper)?)?;
            }
        }
        Ok(())
    })();
    row.status = match result {
        Ok(()) => "success".into(),
        Err(e) => e.kind().into(),
    };
    row.ms = start.elapsed().as_millis() as u64;
    row
}

/// Runs every cell, concurrently, and returns rows in config order.
/// `threads` caps the worker count; `dir` receives graph and colouring
/// files for each row.
pub fn experiment_run(config: &ExperimentConfig, threads: Option<usize>, dir: Option<&Path>) -> Result<Vec<ExperimentRow>> {
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir)?;
    }
    let cells = experiment_cells(config);
    let work = || -> Vec<ExperimentRow> {
        cells.par_iter().enumerate().map(|(i, &(n, p, seed))| run_row(i, n, p, seed, config, dir)).collect()
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder.build().map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(work))
}

/// Writes the CSV header and rows. Timings make the `ms` column vary
/// between runs; everything else is a function of the config.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<ExperimentRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse { line: 1, msg: format!("unexpected CSV header {header:?}") });
    }
    Ok(r.deserialize().collect::<std::result::Result<Vec<ExperimentRow>, _>>()?)
}
