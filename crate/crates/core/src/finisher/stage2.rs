//! Stage two: every edge of `U` draws a colour uniformly from `M` fresh
//! colours, and edges that clash with an adjacent `U` edge are uncoloured.

use rand::Rng as _;

use crate::coloring::{PartialEdgeColoring, Stage};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::pipeline::params::ln_ln;
use crate::pipeline::{Mode, StageOneResult};
use crate::rng::{child_rng, tag};
use crate::verify::{SatisfactionIndex, VertexColorCounts};

#[derive(Debug, Clone)]
pub struct StageTwoState {
    /// `M`.
    pub m_colors: usize,
    /// Stage-two colour `j` in `0..M` is written as `first_color + j`.
    pub first_color: u32,
    /// Raw draw `c'(e)` in `0..M` per edge of the graph; `None` off `U`.
    pub raw: Vec<Option<u32>>,
    /// Colour after uncolouring, per edge; `None` off `U` or when cleared.
    pub final_colors: Vec<Option<u32>>,
    /// Edges of `G''`, increasing.
    pub g2_edges: Vec<usize>,
    /// `u_e = |U_e|` per edge of `G''`.
    pub u_e: Vec<u32>,
    /// `Y_e` per edge of `G''`.
    pub y_e: Vec<u32>,
    /// Global draws taken, including the successful one.
    pub attempts: usize,
}

#[derive(Debug, Clone)]
pub struct StageTwoResult {
    pub state: StageTwoState,
    /// Stage-one and stage-two colours combined.
    pub coloring: PartialEdgeColoring,
}

/// `|U_e|` for every edge index.
pub fn u_sizes(graph: &Graph, u_set: &EdgeSet) -> Vec<u32> {
    let d = graph.degrees_in(u_set);
    graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (d[e.u] + d[e.v]) as u32 - if u_set.contains(i) { 2 } else { 0 })
        .collect()
}

/// `M` for this run: the strict constant, the override, or the practical
/// default `max(3, ceil(4 L)) * ceil(avg u_e / L)` with `L = max(ln ln Δ, 1)`.
pub fn palette_size(graph: &Graph, stage1: &StageOneResult) -> usize {
    let p = &stage1.params;
    if p.mode == Mode::Strict {
        return p.strict_stage2_colors();
    }
    if let Some(m) = p.stage2_colors {
        return m;
    }
    let ll = ln_ln(p.delta_max);
    let ll = if ll.is_finite() { ll.max(1.0) } else { 1.0 };
    let sizes = u_sizes(graph, &stage1.u_set);
    let g2 = stage1.g_double_prime.indices();
    let avg = if g2.is_empty() { 0.0 } else { g2.iter().map(|&e| sizes[e] as f64).sum::<f64>() / g2.len() as f64 };
    let per = (avg / ll).ceil().max(1.0) as usize;
    (4.0 * ll).ceil().max(3.0) as usize * per
}

/// Final colours from raw draws: an edge keeps its draw unless an adjacent
/// edge of `U` drew the same.
pub fn uncolor_clashes(graph: &Graph, raw: &[Option<u32>], m_colors: usize) -> Vec<Option<u32>> {
    let counts = raw_counts(graph, raw, m_colors);
    raw.iter()
        .enumerate()
        .map(|(i, r)| {
            let c = (*r)?;
            let e = graph.edge(i);
            (counts.get(e.u, c) + counts.get(e.v, c) == 2).then_some(c)
        })
        .collect()
}

fn raw_counts(graph: &Graph, raw: &[Option<u32>], m_colors: usize) -> VertexColorCounts {
    let mut counts = VertexColorCounts::new(graph.vertex_count(), m_colors);
    for (i, r) in raw.iter().enumerate() {
        if let Some(c) = *r {
            let e = graph.edge(i);
            counts.add(e.u, c);
            counts.add(e.v, c);
        }
    }
    counts
}

/// `(u_e, Y_e, some Y_{e,r} = 0)` for every edge in `edges`, from per-vertex
/// raw-colour counts. `Y_{e,r}` asks whether `c'(r)` reappears on another
/// `U` edge at any of the three vertices spanned by `e` and `r`.
pub fn y_values(graph: &Graph, u_set: &EdgeSet, raw: &[Option<u32>], m_colors: usize, edges: &[usize]) -> Vec<(u32, u32, bool)> {
    let counts = raw_counts(graph, raw, m_colors);
    edges
        .iter()
        .map(|&ei| {
            let e = graph.edge(ei);
            let (mut u_e, mut y_e, mut some_zero) = (0u32, 0u32, false);
            for (b, a) in [(e.u, e.v), (e.v, e.u)] {
                for &(x, r) in graph.incident(b) {
                    if r == ei || !u_set.contains(r) {
                        continue;
                    }
                    u_e += 1;
                    let c = raw[r].expect("U edges carry a raw colour");
                    // Other U edges coloured c at b or at x. When there are
                    // none, ab and ax are not coloured c either, so any c at
                    // a is a fresh repeat.
                    let near = counts.get(b, c) + counts.get(x, c) - 2;
                    if near > 0 || counts.get(a, c) > 0 {
                        y_e += 1;
                    } else {
                        some_zero = true;
                    }
                }
            }
            (u_e, y_e, some_zero)
        })
        .collect()
}

/// `(u_e, Y_e)` by listing `U_e ∪ U_r` explicitly; for cross-checks.
pub fn naive_y(graph: &Graph, u_set: &EdgeSet, raw: &[Option<u32>], e: usize) -> (u32, u32) {
    let u_e: Vec<usize> = graph.open_neighbourhood_indices(e).filter(|&f| u_set.contains(f)).collect();
    let mut y = 0;
    for &r in &u_e {
        let mut others: Vec<usize> = u_e.clone();
        others.extend(graph.open_neighbourhood_indices(r).filter(|&f| u_set.contains(f)));
        others.sort_unstable();
        others.dedup();
        if others.iter().any(|&f| f != r && raw[f] == raw[r]) {
            y += 1;
        }
    }
    (u_e.len() as u32, y)
}

/// Colours `U` with fresh colours, retrying globally until every edge of
/// `G''` is satisfied under the combined colouring.
pub fn stage2_color(graph: &Graph, stage1: &StageOneResult, seed: u64) -> Result<StageTwoResult> {
    let p = &stage1.params;
    let m = palette_size(graph, stage1);
    if m == 0 {
        return Err(Error::InvalidArgument("stage two needs at least one colour".into()));
    }
    let g2_edges = stage1.g_double_prime.indices().to_vec();
    if p.mode == Mode::Strict {
        let ll = ln_ln(p.delta_max);
        let sizes = u_sizes(graph, &stage1.u_set);
        for &e in &g2_edges {
            let u = sizes[e] as f64;
            if u < 576.0 * ll || u > 580.0 * ll {
                return Err(Error::ConclusionViolated(format!(
                    "u_e = {u} for edge {} outside [576, 580] ln ln Δ",
                    graph.edge(e)
                )));
            }
        }
    }
    let first_color = stage1.coloring.max_color().map_or(1, |c| c + 1);
    let mut base = stage1.coloring.clone();
    base.reserve(Stage::Stage2, first_color..first_color + m as u32)?;
    let u_edges = stage1.u_set.indices();
    let mut rng = child_rng(seed, &[tag::STAGE2]);
    let mut unsatisfied = Vec::new();
    for attempt in 1..=p.stage2_retries {
        let mut raw = vec![None; graph.edge_count()];
        for &e in u_edges {
            raw[e] = Some(rng.gen_range(0..m as u32));
        }
        let final_colors = uncolor_clashes(graph, &raw, m);
        let mut coloring = base.clone();
        for &e in u_edges {
            coloring.set(e, final_colors[e].map(|c| first_color + c));
        }
        let index = SatisfactionIndex::new(graph, &coloring)?;
        let ys = y_values(graph, &stage1.u_set, &raw, m, &g2_edges);
        unsatisfied.clear();
        for (&e, &(_, _, some_zero)) in g2_edges.iter().zip(&ys) {
            if !index.is_satisfied(e) {
                if some_zero {
                    return Err(Error::ConclusionViolated(format!(
                        "edge {} has Y_e,r = 0 but is unsatisfied",
                        graph.edge(e)
                    )));
                }
                unsatisfied.push(e);
            }
        }
        if !unsatisfied.is_empty() {
            continue;
        }
        let state = StageTwoState {
            m_colors: m,
            first_color,
            raw,
            final_colors,
            g2_edges,
            u_e: ys.iter().map(|y| y.0).collect(),
            y_e: ys.iter().map(|y| y.1).collect(),
            attempts: attempt,
        };
        return Ok(StageTwoResult { state, coloring });
    }
    Err(Error::Stage2CapExceeded {
        cap: p.stage2_retries,
        unsatisfied: unsatisfied.into_iter().map(|e| graph.edge(e)).collect(),
    })
}
