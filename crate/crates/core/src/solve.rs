//! Whole construction: stage one, stage two, and both completions, with
//! every result re-verified.

use crate::coloring::{PartialEdgeColoring, Stage};
use crate::error::{Error, Result};
use crate::finisher::{complete_one_color, complete_proper, stage2_color, StageTwoState};
use crate::graph::Graph;
use crate::pipeline::{run_stage1, Mode, Overrides, PipelineParameters, StageOneResult};
use crate::rng::{derive_seed, tag};
use crate::verify::{colors_used, is_proper, require_open_cf};

#[derive(Debug, Clone, Default)]
pub struct ColorOptions {
    pub mode: Mode,
    pub overrides: Overrides,
    pub seed: u64,
    /// Also build the proper completion.
    pub proper: bool,
}

#[derive(Debug, Clone)]
pub struct ColorOutcome {
    pub stage1: StageOneResult,
    pub stage2: StageTwoState,
    /// Stage-one and stage-two colours, before completion.
    pub partial: PartialEdgeColoring,
    /// Total open conflict-free colouring with one completion colour.
    pub ocf: PartialEdgeColoring,
    /// Total proper open conflict-free colouring, when requested.
    pub proper: Option<PartialEdgeColoring>,
}

impl ColorOutcome {
    pub fn stage1_colors(&self) -> usize {
        self.partial.colors_used_in(Stage::Stage1)
    }

    pub fn stage2_colors(&self) -> usize {
        self.partial.colors_used_in(Stage::Stage2)
    }

    pub fn total_colors_ocf(&self) -> usize {
        colors_used(&self.ocf)
    }

    pub fn total_colors_proper(&self) -> Option<usize> {
        self.proper.as_ref().map(colors_used)
    }
}

pub fn color_graph(graph: &Graph, options: &ColorOptions) -> Result<ColorOutcome> {
    let params = PipelineParameters::derive(graph, options.mode, &options.overrides)?;
    let seed = derive_seed(options.seed, &[tag::PIPELINE]);
    let stage1 = run_stage1(graph, &params, seed)?;
    let two = stage2_color(graph, &stage1, seed)?;
    let partial = two.coloring;
    require_open_cf(graph, &partial)?;
    if !is_proper(graph, &partial)? {
        return Err(Error::ConclusionViolated("stage-one and stage-two colours are not proper".into()));
    }
    let ocf = complete_one_color(graph, &partial)?;
    require_open_cf(graph, &ocf)?;
    let proper = if options.proper {
        let p = complete_proper(graph, &partial)?;
        require_open_cf(graph, &p)?;
        if !is_proper(graph, &p)? {
            return Err(Error::ConclusionViolated("proper completion is not proper".into()));
        }
        Some(p)
    } else {
        None
    };
    Ok(ColorOutcome { stage1, stage2: two.state, partial, ocf, proper })
}
