//! Partial edge colourings with stage-tagged palettes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which construction stage reserved a colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Stage1,
    Stage2,
    Completion,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Stage1 => "stage1",
            Stage::Stage2 => "stage2",
            Stage::Completion => "completion",
        })
    }
}

/// Map from edge index to an optional colour, plus the palette each colour
/// was reserved from. A colour carries at most one stage tag, so palettes
/// of different stages are disjoint by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEdgeColoring {
    colors: Vec<Option<u32>>,
    tags: BTreeMap<u32, Stage>,
}

impl PartialEdgeColoring {
    /// All edges of `graph` uncoloured.
    pub fn uncolored(graph: &Graph) -> Self {
        Self::with_len(graph.edge_count())
    }

    pub fn with_len(edge_count: usize) -> Self {
        PartialEdgeColoring { colors: vec![None; edge_count], tags: BTreeMap::new() }
    }

    pub fn from_colors(colors: Vec<Option<u32>>) -> Self {
        PartialEdgeColoring { colors, tags: BTreeMap::new() }
    }

    /// Total colouring from plain colours, one per edge.
    pub fn total(colors: &[u32]) -> Self {
        Self::from_colors(colors.iter().map(|&c| Some(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, edge: usize) -> Option<u32> {
        self.colors[edge]
    }

    pub fn set(&mut self, edge: usize, color: Option<u32>) {
        self.colors[edge] = color;
    }

    pub fn colors(&self) -> &[Option<u32>] {
        &self.colors
    }

    pub fn tags(&self) -> &BTreeMap<u32, Stage> {
        &self.tags
    }

    /// Reserves `colors` for `stage`. A colour already tagged with a
    /// different stage is a palette clash.
    pub fn reserve(&mut self, stage: Stage, colors: impl IntoIterator<Item = u32>) -> Result<()> {
        for c in colors {
            match self.tags.insert(c, stage) {
                Some(prev) if prev != stage => return Err(Error::PaletteClash { color: c }),
                _ => {}
            }
        }
        Ok(())
    }

    /// Colours reserved for `stage`, increasing.
    pub fn palette(&self, stage: Stage) -> Vec<u32> {
        self.tags.iter().filter(|(_, &s)| s == stage).map(|(&c, _)| c).collect()
    }

    pub fn stage_of(&self, color: u32) -> Option<Stage> {
        self.tags.get(&color).copied()
    }

    /// Largest colour that is either used or reserved.
    pub fn max_color(&self) -> Option<u32> {
        let used = self.colors.iter().flatten().copied().max();
        let reserved = self.tags.keys().next_back().copied();
        used.max(reserved)
    }

    pub fn uncolored_edges(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&i| self.colors[i].is_none()).collect()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Distinct colours that appear on edges whose colour is tagged `stage`.
    pub fn colors_used_in(&self, stage: Stage) -> usize {
        let mut used: Vec<u32> =
            self.colors.iter().flatten().copied().filter(|c| self.stage_of(*c) == Some(stage)).collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// Checks that this colouring has one slot per edge of `graph`.
    pub fn check_owner(&self, graph: &Graph) -> Result<()> {
        if self.colors.len() == graph.edge_count() {
            Ok(())
        } else {
            Err(Error::ColoringMismatch(format!(
                "colouring has {} slots, graph has {} edges",
                self.colors.len(),
                graph.edge_count()
            )))
        }
    }
}
