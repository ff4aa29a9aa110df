//! Balanced edge decompositions.
//!
//! [`balanced_decompose`] splits the edges of a graph into `k` spanning
//! classes so that every vertex `v` has between `d(v)/k - 2` and
//! `d(v)/k + 2` edges in every class. The construction:
//!
//! 1. Walk Eulerian circuits of the graph (odd-degree vertices are joined to
//!    a virtual vertex first) and label the edges cyclically `0, 1, .., k-1`
//!    along each circuit.
//! 2. While some vertex has two classes whose degrees differ by three or
//!    more, flip an alternating trail: recolour an edge of the heavy class
//!    to the light one, and keep going from the far endpoint while that
//!    endpoint became overloaded by three or more in the receiving class.
//!    Each trail strictly lowers `sum_v sum_i d_i(v)^2`, so the loop ends
//!    with every pairwise difference at most two.
//! 3. Optionally polish vertices whose spread is exactly two with the same
//!    trail move, reverting trails that get stuck.
//!
//! The result is checked with exact integer arithmetic before it is
//! returned.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::rng::{rng_from, Rng};

/// Assignment of every edge to one of `k` classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    k: usize,
    class_of: Vec<u32>,
}

impl Decomposition {
    pub fn new(k: usize, class_of: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("decomposition needs k >= 1".into()));
        }
        if let Some(&c) = class_of.iter().find(|&&c| c as usize >= k) {
            return Err(Error::InvalidArgument(format!("class {c} out of range for k = {k}")));
        }
        Ok(Decomposition { k, class_of })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class_of(&self, edge: usize) -> usize {
        self.class_of[edge] as usize
    }

    pub fn classes(&self) -> &[u32] {
        &self.class_of
    }

    /// Edge indices of each class, increasing within each class.
    pub fn class_indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (e, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(e);
        }
        out
    }

    pub fn class_sets(&self, graph: &Graph) -> Vec<EdgeSet> {
        self.class_indices().into_iter().map(|ix| EdgeSet::from_indices(graph, ix)).collect()
    }

    /// Per-vertex class degrees, `n * k` row-major.
    pub fn class_degrees(&self, graph: &Graph) -> Vec<u32> {
        let mut counts = vec![0u32; graph.vertex_count() * self.k];
        for (idx, e) in graph.edges().iter().enumerate() {
            let c = self.class_of[idx] as usize;
            counts[e.u * self.k + c] += 1;
            counts[e.v * self.k + c] += 1;
        }
        counts
    }

    fn check_owner(&self, graph: &Graph) -> Result<()> {
        if self.class_of.len() == graph.edge_count() {
            Ok(())
        } else {
            Err(Error::ForeignEdgeSet(format!(
                "decomposition covers {} edges, graph has {}",
                self.class_of.len(),
                graph.edge_count()
            )))
        }
    }
}

/// Measured imbalance of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discrepancy {
    /// `max_v max_{i<j} |d_i(v) - d_j(v)|`.
    pub pairwise: u32,
    /// `max_{v,i} |k d_i(v) - d(v)|`; the around-mean discrepancy times `k`.
    pub around_mean_scaled: u64,
    pub k: usize,
}

impl Discrepancy {
    /// `max_{v,i} |d_i(v) - d(v)/k|`.
    pub fn around_mean(&self) -> f64 {
        self.around_mean_scaled as f64 / self.k as f64
    }

    /// Exact check of `d(v)/k - bound <= d_i(v) <= d(v)/k + bound`.
    pub fn within(&self, bound: u64) -> bool {
        self.around_mean_scaled <= bound * self.k as u64
    }
}

pub fn max_discrepancy(graph: &Graph, d: &Decomposition) -> Result<Discrepancy> {
    d.check_owner(graph)?;
    let k = d.k;
    let counts = d.class_degrees(graph);
    let mut pairwise = 0;
    let mut scaled = 0u64;
    for v in 0..graph.vertex_count() {
        let row = &counts[v * k..(v + 1) * k];
        let hi = *row.iter().max().unwrap();
        let lo = *row.iter().min().unwrap();
        pairwise = pairwise.max(hi - lo);
        let deg = graph.deg(v) as i64;
        for &c in row {
            scaled = scaled.max((k as i64 * c as i64 - deg).unsigned_abs());
        }
    }
    Ok(Discrepancy { pairwise, around_mean_scaled: scaled, k })
}

/// What to do when the move cap is reached before the bound holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    #[default]
    Strict,
    /// Return the best decomposition found, whatever its discrepancy.
    Relaxed,
}

/// One step of an Euler circuit: a real edge index or a virtual edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Real(usize),
    Virtual,
}

/// Closed trails covering every edge once, after joining each odd-degree
/// vertex to a virtual vertex. Circuits through the virtual vertex start
/// there; the others start at their least vertex.
fn euler_circuits(graph: &Graph) -> Vec<Vec<Step>> {
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let virt = n;
    let mut adj: Vec<Vec<(usize, usize)>> = (0..n).map(|v| graph.incident(v).to_vec()).collect();
    adj.push(Vec::new());
    let mut next_id = m;
    for v in 0..n {
        if graph.deg(v) % 2 == 1 {
            adj[v].push((virt, next_id));
            adj[virt].push((v, next_id));
            next_id += 1;
        }
    }
    let mut used = vec![false; next_id];
    let mut ptr = vec![0usize; n + 1];
    let mut circuits = Vec::new();
    let starts = std::iter::once(virt).chain(0..n);
    for start in starts {
        let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
        let mut circuit = Vec::new();
        while let Some(&(v, arrived_by)) = stack.last() {
            while ptr[v] < adj[v].len() && used[adj[v][ptr[v]].1] {
                ptr[v] += 1;
            }
            if let Some(&(w, e)) = adj[v].get(ptr[v]) {
                used[e] = true;
                stack.push((w, Some(e)));
            } else {
                stack.pop();
                if let Some(e) = arrived_by {
                    circuit.push(if e < m { Step::Real(e) } else { Step::Virtual });
                }
            }
        }
        if !circuit.is_empty() {
            circuits.push(circuit);
        }
    }
    circuits
}

fn cyclic_labels(graph: &Graph, k: usize, mut offset: impl FnMut() -> usize) -> Vec<u32> {
    let mut class_of = vec![0u32; graph.edge_count()];
    for circuit in euler_circuits(graph) {
        let start = offset();
        for (t, step) in circuit.iter().enumerate() {
            if let Step::Real(e) = *step {
                class_of[e] = ((start + t) % k) as u32;
            }
        }
    }
    class_of
}

/// Two classes by alternating labels along Euler circuits; every vertex has
/// `|d_1(v) - d_2(v)| <= 2`.
pub fn euler_split2(graph: &Graph) -> Decomposition {
    Decomposition { k: 2, class_of: cyclic_labels(graph, 2, || 0) }
}

/// Balanced `k`-decomposition; see the module docs. The move cap is
/// `20 * |E| * k`.
pub fn balanced_decompose(
    graph: &Graph,
    k: usize,
    seed: u64,
    strictness: Strictness,
) -> Result<Decomposition> {
    if k == 0 {
        return Err(Error::InvalidArgument("balanced_decompose needs k >= 1".into()));
    }
    if k == 1 {
        return Ok(Decomposition { k, class_of: vec![0; graph.edge_count()] });
    }
    let mut rng: Rng = rng_from(seed);
    let class_of = cyclic_labels(graph, k, || rng.gen_range(0..k));
    let cap = 20usize.saturating_mul(graph.edge_count()).saturating_mul(k).max(1);
    let mut b = Balancer::new(graph, k, class_of);
    let converged = b.balance(cap) && {
        b.polish(cap);
        b.balance(cap)
    };
    let d = Decomposition { k, class_of: b.class_of };
    let disc = max_discrepancy(graph, &d)?;
    if (!converged || !disc.within(2)) && strictness == Strictness::Strict {
        return Err(Error::DiscrepancyNotAchieved { k, cap, pairwise: disc.pairwise });
    }
    Ok(d)
}

struct Balancer<'g> {
    graph: &'g Graph,
    k: usize,
    class_of: Vec<u32>,
    counts: Vec<i64>,
    stamp: Vec<u32>,
    walk: u32,
    moves: usize,
}

impl<'g> Balancer<'g> {
    fn new(graph: &'g Graph, k: usize, class_of: Vec<u32>) -> Self {
        let mut counts = vec![0i64; graph.vertex_count() * k];
        for (idx, e) in graph.edges().iter().enumerate() {
            let c = class_of[idx] as usize;
            counts[e.u * k + c] += 1;
            counts[e.v * k + c] += 1;
        }
        Balancer { graph, k, class_of, counts, stamp: vec![0; graph.edge_count()], walk: 0, moves: 0 }
    }

    fn count(&self, v: usize, c: usize) -> i64 {
        self.counts[v * self.k + c]
    }

    /// Heaviest and lightest class at `v`, lowest index on ties.
    fn extremes(&self, v: usize) -> (usize, usize, i64) {
        let row = &self.counts[v * self.k..(v + 1) * self.k];
        let mut hi = 0;
        let mut lo = 0;
        for c in 1..self.k {
            if row[c] > row[hi] {
                hi = c;
            }
            if row[c] < row[lo] {
                lo = c;
            }
        }
        (hi, lo, row[hi] - row[lo])
    }

    fn flip(&mut self, e: usize, to: usize) {
        let from = self.class_of[e] as usize;
        let edge = self.graph.edge(e);
        for w in [edge.u, edge.v] {
            self.counts[w * self.k + from] -= 1;
            self.counts[w * self.k + to] += 1;
        }
        self.class_of[e] = to as u32;
        self.stamp[e] = self.walk;
        self.moves += 1;
    }

    fn unused_edge_of_class(&self, v: usize, c: usize) -> Option<usize> {
        self.graph
            .incident(v)
            .iter()
            .map(|&(_, f)| f)
            .find(|&f| self.class_of[f] as usize == c && self.stamp[f] != self.walk)
    }

    /// Alternating trail from `v` moving edges from class `heavy` to `light`.
    /// Continues while the current endpoint's receiving class exceeds the
    /// other by `continue_at` or more. Returns the trail's edges and final
    /// endpoint, or `None` if it got stuck.
    fn trail(&mut self, v: usize, heavy: usize, light: usize, continue_at: i64) -> (Vec<usize>, Option<usize>) {
        self.walk = self.walk.wrapping_add(1);
        if self.walk == 0 {
            self.stamp.iter_mut().for_each(|s| *s = u32::MAX);
            self.walk = 1;
        }
        let (mut from, mut to) = (heavy, light);
        let mut cur = v;
        let mut flipped = Vec::new();
        loop {
            let Some(e) = self.unused_edge_of_class(cur, from) else {
                return (flipped, None);
            };
            self.flip(e, to);
            flipped.push(e);
            cur = self.graph.edge(e).other(cur);
            if self.count(cur, to) - self.count(cur, from) >= continue_at {
                std::mem::swap(&mut from, &mut to);
            } else {
                return (flipped, Some(cur));
            }
        }
    }

    /// Removes every pairwise difference of three or more. Returns false if
    /// the move cap was hit first.
    fn balance(&mut self, cap: usize) -> bool {
        let n = self.graph.vertex_count();
        let mut queued = vec![true; n];
        let mut queue: std::collections::VecDeque<usize> = (0..n).collect();
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            loop {
                let (hi, lo, spread) = self.extremes(v);
                if spread < 3 {
                    break;
                }
                if self.moves >= cap {
                    return false;
                }
                let (_, end) = self.trail(v, hi, lo, 3);
                match end {
                    Some(w) if !queued[w] && w != v => {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                    // Cannot happen by the counting argument; bail out rather
                    // than spin.
                    None => return false,
                }
            }
        }
        true
    }

    /// Tries to bring spread-two vertices down to spread one. Trails that get
    /// stuck are reverted. May leave spread-three vertices elsewhere, which
    /// the caller removes with another `balance` pass.
    fn polish(&mut self, cap: usize) {
        let n = self.graph.vertex_count();
        let mut stuck = vec![false; n];
        loop {
            let mut progress = false;
            for v in 0..n {
                if stuck[v] {
                    continue;
                }
                let (hi, lo, spread) = self.extremes(v);
                if spread != 2 {
                    continue;
                }
                if self.moves >= cap {
                    return;
                }
                let (flipped, end) = self.trail(v, hi, lo, 2);
                if end.is_none() {
                    for &e in flipped.iter().rev() {
                        let back = if self.class_of[e] as usize == lo { hi } else { lo };
                        self.flip(e, back);
                    }
                    stuck[v] = true;
                } else {
                    progress = true;
                }
            }
            if !progress {
                return;
            }
            if !self.balance(cap) {
                return;
            }
        }
    }
}
