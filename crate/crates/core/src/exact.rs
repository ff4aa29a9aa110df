//! Exhaustive search for the least number of colours in an open
//! conflict-free (optionally proper) total edge colouring.
//!
//! A graph whose edges are all isolated needs no colours at all; its index
//! is reported as 0 and its witness is the empty colouring.

use serde::Serialize;

use crate::coloring::PartialEdgeColoring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edge-count limits beyond which the search refuses to start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub ocf_edges: usize,
    pub proper_edges: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits { ocf_edges: 16, proper_edges: 12 }
    }
}

impl ExactLimits {
    /// The same cap for both variants.
    pub fn uniform(cap: usize) -> Self {
        ExactLimits { ocf_edges: cap, proper_edges: cap }
    }

    fn check(&self, graph: &Graph, proper: bool) -> Result<()> {
        let cap = if proper { self.proper_edges } else { self.ocf_edges };
        if graph.edge_count() > cap {
            return Err(Error::CapExceeded { edges: graph.edge_count(), cap });
        }
        Ok(())
    }
}

fn all_isolated(graph: &Graph) -> bool {
    (0..graph.edge_count()).all(|i| !graph.is_non_isolated(i))
}

struct Search<'g> {
    graph: &'g Graph,
    k: u32,
    proper: bool,
    color: Vec<u32>,
    /// Edges whose neighbourhood becomes fully coloured at each index.
    check_at: Vec<Vec<usize>>,
    /// Earlier incident edges of each edge, for the proper constraint.
    earlier: Vec<Vec<usize>>,
    nbhd: Vec<Vec<usize>>,
    tally: Vec<u32>,
}

impl<'g> Search<'g> {
    fn new(graph: &'g Graph, k: u32, proper: bool) -> Self {
        let m = graph.edge_count();
        let nbhd: Vec<Vec<usize>> = (0..m).map(|i| graph.open_neighbourhood_indices(i).collect()).collect();
        let mut check_at = vec![Vec::new(); m];
        for (f, nb) in nbhd.iter().enumerate() {
            if let Some(&last) = nb.iter().max() {
                check_at[last].push(f);
            }
        }
        let earlier = nbhd.iter().enumerate().map(|(i, nb)| nb.iter().copied().filter(|&f| f < i).collect()).collect();
        Search { graph, k, proper, color: vec![0; m], check_at, earlier, nbhd, tally: vec![0; k as usize + 1] }
    }

    fn satisfied(&mut self, f: usize) -> bool {
        for &g in &self.nbhd[f] {
            self.tally[self.color[g] as usize] += 1;
        }
        let ok = self.nbhd[f].iter().any(|&g| self.tally[self.color[g] as usize] == 1);
        for &g in &self.nbhd[f] {
            self.tally[self.color[g] as usize] = 0;
        }
        ok
    }

    /// Colours edges `j..` given colours `1..=used` already appear.
    fn dfs(&mut self, j: usize, used: u32) -> bool {
        if j == self.graph.edge_count() {
            return true;
        }
        let top = self.k.min(used + 1);
        'colors: for c in 1..=top {
            if self.proper && self.earlier[j].iter().any(|&f| self.color[f] == c) {
                continue;
            }
            self.color[j] = c;
            for idx in 0..self.check_at[j].len() {
                let f = self.check_at[j][idx];
                if !self.satisfied(f) {
                    continue 'colors;
                }
            }
            if self.dfs(j + 1, used.max(c)) {
                return true;
            }
        }
        self.color[j] = 0;
        false
    }
}

/// A total colouring with at most `k` colours that is open conflict-free
/// (and proper if asked), or `None`.
pub fn is_k_colorable(graph: &Graph, k: usize, proper: bool, limits: ExactLimits) -> Result<Option<PartialEdgeColoring>> {
    limits.check(graph, proper)?;
    if all_isolated(graph) {
        return Ok(Some(PartialEdgeColoring::uncolored(graph)));
    }
    if k == 0 {
        return Ok(None);
    }
    let k = k.min(graph.edge_count()) as u32;
    let mut s = Search::new(graph, k, proper);
    Ok(s.dfs(0, 0).then(|| PartialEdgeColoring::total(&s.color)))
}

/// Least `k` for which [`is_k_colorable`] succeeds, with its witness.
pub fn exact_index_with_witness(graph: &Graph, proper: bool, limits: ExactLimits) -> Result<(usize, PartialEdgeColoring)> {
    limits.check(graph, proper)?;
    if all_isolated(graph) {
        return Ok((0, PartialEdgeColoring::uncolored(graph)));
    }
    for k in 1..=graph.edge_count() {
        if let Some(w) = is_k_colorable(graph, k, proper, limits)? {
            return Ok((k, w));
        }
    }
    unreachable!("a rainbow colouring is proper and conflict-free")
}

pub fn exact_index(graph: &Graph, proper: bool, limits: ExactLimits) -> Result<usize> {
    exact_index_with_witness(graph, proper, limits).map(|(k, _)| k)
}

/// `log2 n - log2 log2 n - 1`.
pub fn kn_bound(n: usize) -> f64 {
    let l = (n as f64).log2();
    l - l.log2() - 1.0
}

#[derive(Debug, Clone, Serialize)]
pub struct KnCheck {
    pub n: usize,
    pub index: usize,
    pub bound: f64,
    pub holds: bool,
}

/// Compares the exact index of `K_n` with the lower bound, strictly.
pub fn kn_lower_bound_check(n: usize, limits: ExactLimits) -> Result<KnCheck> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("K_n check needs n >= 3, got {n}")));
    }
    let index = exact_index(&Graph::complete(n), false, limits)?;
    let bound = kn_bound(n);
    Ok(KnCheck { n, index, bound, holds: index as f64 > bound })
}
