#![allow(dead_code)]

use ocf_core::{Graph, PartialEdgeColoring};
use proptest::prelude::*;

pub fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let mut pairs = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[k] {
                pairs.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &pairs).unwrap()
}

/// Graphs on `0..=max_n` vertices with every pair present with probability 1/2.
pub fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |m| graph_from_mask(n, &m))
    })
}

/// A graph with a partial colouring drawn from `0..=colors`, 0 meaning
/// uncoloured.
pub fn colored_graph(max_n: usize, colors: u32) -> impl Strategy<Value = (Graph, PartialEdgeColoring)> {
    small_graph(max_n).prop_flat_map(move |g| {
        let m = g.edge_count();
        proptest::collection::vec(0..=colors, m).prop_map(move |cs| {
            let c = PartialEdgeColoring::from_colors(cs.into_iter().map(|c| (c > 0).then_some(c)).collect());
            (g.clone(), c)
        })
    })
}

/// Open neighbourhood of edge `i` from first principles.
pub fn neighbourhood(g: &Graph, i: usize) -> Vec<usize> {
    let e = g.edge(i);
    (0..g.edge_count())
        .filter(|&j| {
            let f = g.edge(j);
            j != i && (f.u == e.u || f.u == e.v || f.v == e.u || f.v == e.v)
        })
        .collect()
}

/// Satisfaction straight from the definition.
pub fn satisfied(g: &Graph, c: &PartialEdgeColoring, i: usize) -> bool {
    let nb = neighbourhood(g, i);
    if nb.is_empty() {
        return true;
    }
    nb.iter().filter_map(|&j| c.get(j)).any(|col| nb.iter().filter(|&&j| c.get(j) == Some(col)).count() == 1)
}

pub fn proper(g: &Graph, c: &PartialEdgeColoring) -> bool {
    (0..g.edge_count()).all(|i| neighbourhood(g, i).iter().all(|&j| c.get(i).is_none() || c.get(i) != c.get(j)))
}

pub fn distinct_colors(c: &PartialEdgeColoring) -> usize {
    let mut v: Vec<u32> = c.colors().iter().flatten().copied().collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// `|k d_i(v) - d(v)| <= 2k` for every vertex and class.
pub fn balanced(g: &Graph, k: usize, class_of: impl Fn(usize) -> usize) -> bool {
    let n = g.vertex_count();
    let mut deg = vec![vec![0i64; k]; n];
    for (i, e) in g.edges().iter().enumerate() {
        let c = class_of(i);
        deg[e.u][c] += 1;
        deg[e.v][c] += 1;
    }
    (0..n).all(|v| {
        let d: i64 = deg[v].iter().sum();
        deg[v].iter().all(|&di| (k as i64 * di - d).abs() <= 2 * k as i64)
    })
}
