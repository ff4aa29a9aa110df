//! Random vertex partitions per round, the events on them, and the
//! resampling loop that drives every event to hold.

use std::collections::BTreeSet;

use rand::Rng as _;
use serde::Serialize;

use super::params::PipelineParameters;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::Rng;

/// Part in `1..=4` of every vertex in every round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFamily {
    n: usize,
    s: usize,
    parts: Vec<u8>,
}

impl PartitionFamily {
    /// Every vertex in part `q` in every round.
    pub fn constant(n: usize, s: usize, q: u8) -> Self {
        assert!((1..=4).contains(&q));
        PartitionFamily { n, s, parts: vec![q; n * s] }
    }

    /// From one part vector per round.
    pub fn from_rounds(n: usize, rounds: &[Vec<u8>]) -> Result<Self> {
        let mut parts = Vec::with_capacity(n * rounds.len());
        for (i, r) in rounds.iter().enumerate() {
            if r.len() != n || r.iter().any(|q| !(1..=4).contains(q)) {
                return Err(Error::InvalidArgument(format!("round {i}: need {n} parts in 1..=4")));
            }
            parts.extend_from_slice(r);
        }
        Ok(PartitionFamily { n, s: rounds.len(), parts })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn rounds(&self) -> usize {
        self.s
    }

    pub fn part(&self, v: usize, round: usize) -> u8 {
        self.parts[round * self.n + v]
    }

    pub fn set(&mut self, v: usize, round: usize, q: u8) {
        self.parts[round * self.n + v] = q;
    }

    /// Parts of all vertices in one round.
    pub fn round(&self, round: usize) -> &[u8] {
        &self.parts[round * self.n..(round + 1) * self.n]
    }

    /// `[|V_1|, |V_2|, |V_3|, |V_4|]` in one round.
    pub fn sizes(&self, round: usize) -> [usize; 4] {
        let mut out = [0; 4];
        for &q in self.round(round) {
            out[q as usize - 1] += 1;
        }
        out
    }
}

fn draw(rng: &mut Rng, probs: &[f64; 4]) -> u8 {
    let x: f64 = rng.gen();
    let mut acc = 0.0;
    for (q, p) in probs.iter().enumerate().take(3) {
        acc += p;
        if x < acc {
            return q as u8 + 1;
        }
    }
    4
}

/// Independent draws of every `R_{v,i}` from the per-round distributions.
pub fn sample_partitions(params: &PipelineParameters, n: usize, rng: &mut Rng) -> Result<PartitionFamily> {
    if params.rounds.len() != params.s {
        return Err(Error::ParametersInfeasible(format!(
            "parameters describe {} rounds, expected {}",
            params.rounds.len(),
            params.s
        )));
    }
    let mut parts = Vec::with_capacity(n * params.s);
    for round in &params.rounds {
        for _ in 0..n {
            parts.push(draw(rng, &round.probs));
        }
    }
    Ok(PartitionFamily { n, s: params.s, parts })
}

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EventKind {
    D_v1,
    F_v2,
    F_v13,
    D_v2,
    A_v,
}

/// A violated event. `round` is `None` for `A_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Violation {
    pub kind: EventKind,
    pub vertex: usize,
    pub round: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EventReport {
    pub violations: Vec<Violation>,
}

impl EventReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `(R_1, R_2, R_13)` for a vertex in one round.
pub fn round_counts(round: &Graph, parts: &[u8], v: usize) -> (u32, u32, u32) {
    let mut r = [0u32; 5];
    for &(w, _) in round.incident(v) {
        r[parts[w] as usize] += 1;
    }
    (r[1], r[2], r[1] + r[3])
}

/// One endpoint in `V_1 ∪ V_2`, the other in `V_4`.
pub fn good_configuration(a: u8, b: u8) -> bool {
    (a <= 2 && b == 4) || (b <= 2 && a == 4)
}

/// Rounds without edges carry no D/F events.
fn df_violations(params: &PipelineParameters, i: usize, r1: u32, r2: u32, r13: u32) -> [Option<EventKind>; 4] {
    if params.rounds[i].delta_max == 0 {
        return [None; 4];
    }
    let t = &params.rounds[i].thresholds;
    let (r1, r2, r13) = (r1 as f64, r2 as f64, r13 as f64);
    [
        (r1 >= t.d1).then_some(EventKind::D_v1),
        (r2 <= t.f2).then_some(EventKind::F_v2),
        (r13 <= t.f13).then_some(EventKind::F_v13),
        (r2 >= t.d2).then_some(EventKind::D_v2),
    ]
}

/// Edges of `graph` that are in bad configuration in every round, counted
/// per vertex.
pub fn always_bad_counts(graph: &Graph, family: &PartitionFamily) -> Vec<u32> {
    let mut b = vec![0u32; graph.vertex_count()];
    for e in graph.edges() {
        if !(0..family.rounds()).any(|i| good_configuration(family.part(e.u, i), family.part(e.v, i))) {
            b[e.u] += 1;
            b[e.v] += 1;
        }
    }
    b
}

/// Every violated event, ordered by vertex, then round, then kind, with the
/// `A_v` events after all others.
pub fn check_events(
    graph: &Graph,
    rounds: &[Graph],
    family: &PartitionFamily,
    params: &PipelineParameters,
) -> EventReport {
    let n = graph.vertex_count();
    let mut violations = Vec::new();
    for v in 0..n {
        for (i, g) in rounds.iter().enumerate() {
            let (r1, r2, r13) = round_counts(g, family.round(i), v);
            for kind in df_violations(params, i, r1, r2, r13).into_iter().flatten() {
                violations.push(Violation { kind, vertex: v, round: Some(i) });
            }
        }
    }
    let b = always_bad_counts(graph, family);
    for v in 0..n {
        if b[v] as f64 > params.a_threshold {
            violations.push(Violation { kind: EventKind::A_v, vertex: v, round: None });
        }
    }
    EventReport { violations }
}

/// Ordering key of a violated event in the resampling loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    late: bool,
    vertex: usize,
    round: usize,
    kind: EventKind,
}

impl Key {
    fn violation(self) -> Violation {
        Violation { kind: self.kind, vertex: self.vertex, round: (!self.late).then_some(self.round) }
    }
}

/// Incrementally maintained event state for Moser-Tardos resampling.
pub struct Resampler<'a> {
    graph: &'a Graph,
    rounds: &'a [Graph],
    params: &'a PipelineParameters,
    family: PartitionFamily,
    /// `R_1`, `R_2`, `R_3` per `(round, vertex)`.
    r: Vec<[u32; 3]>,
    good_rounds: Vec<u32>,
    bad: Vec<u32>,
    violated: BTreeSet<Key>,
    dirty_df: Vec<(usize, usize)>,
    dirty_a: Vec<usize>,
    resamples: usize,
}

impl<'a> Resampler<'a> {
    pub fn new(
        graph: &'a Graph,
        rounds: &'a [Graph],
        params: &'a PipelineParameters,
        family: PartitionFamily,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        if family.vertex_count() != n || family.rounds() != rounds.len() || params.rounds.len() != rounds.len() {
            return Err(Error::InvalidArgument("family, rounds and parameters disagree in shape".into()));
        }
        let mut r = vec![[0u32; 3]; n * rounds.len()];
        for (i, g) in rounds.iter().enumerate() {
            let parts = family.round(i);
            for v in 0..n {
                for &(w, _) in g.incident(v) {
                    let q = parts[w];
                    if q <= 3 {
                        r[i * n + v][q as usize - 1] += 1;
                    }
                }
            }
        }
        let mut good_rounds = vec![0u32; graph.edge_count()];
        let mut bad = vec![0u32; n];
        for (idx, e) in graph.edges().iter().enumerate() {
            good_rounds[idx] =
                (0..rounds.len()).filter(|&i| good_configuration(family.part(e.u, i), family.part(e.v, i))).count()
                    as u32;
            if good_rounds[idx] == 0 {
                bad[e.u] += 1;
                bad[e.v] += 1;
            }
        }
        let mut me = Resampler {
            graph,
            rounds,
            params,
            family,
            r,
            good_rounds,
            bad,
            violated: BTreeSet::new(),
            dirty_df: Vec::new(),
            dirty_a: Vec::new(),
            resamples: 0,
        };
        for v in 0..n {
            for i in 0..rounds.len() {
                me.evaluate_df(v, i);
            }
            me.evaluate_a(v);
        }
        Ok(me)
    }

    pub fn family(&self) -> &PartitionFamily {
        &self.family
    }

    pub fn into_family(self) -> PartitionFamily {
        self.family
    }

    pub fn resamples(&self) -> usize {
        self.resamples
    }

    pub fn report(&self) -> EventReport {
        EventReport { violations: self.violated.iter().map(|k| k.violation()).collect() }
    }

    fn evaluate_df(&mut self, v: usize, i: usize) {
        let [r1, r2, r3] = self.r[i * self.graph.vertex_count() + v];
        let now = df_violations(self.params, i, r1, r2, r1 + r3);
        for (kind, hit) in
            [EventKind::D_v1, EventKind::F_v2, EventKind::F_v13, EventKind::D_v2].into_iter().zip(now)
        {
            let key = Key { late: false, vertex: v, round: i, kind };
            if hit.is_some() {
                self.violated.insert(key);
            } else {
                self.violated.remove(&key);
            }
        }
    }

    fn evaluate_a(&mut self, v: usize) {
        let key = Key { late: true, vertex: v, round: 0, kind: EventKind::A_v };
        if self.bad[v] as f64 > self.params.a_threshold {
            self.violated.insert(key);
        } else {
            self.violated.remove(&key);
        }
    }

    fn set_part(&mut self, u: usize, i: usize, new: u8) {
        let old = self.family.part(u, i);
        if old == new {
            return;
        }
        let n = self.graph.vertex_count();
        for &(w, _) in self.rounds[i].incident(u) {
            let slot = &mut self.r[i * n + w];
            if old <= 3 {
                slot[old as usize - 1] -= 1;
            }
            if new <= 3 {
                slot[new as usize - 1] += 1;
            }
            self.dirty_df.push((w, i));
        }
        for &(w, e) in self.graph.incident(u) {
            let q = self.family.part(w, i);
            let before = good_configuration(old, q);
            let after = good_configuration(new, q);
            if before == after {
                continue;
            }
            let was_bad = self.good_rounds[e] == 0;
            if after {
                self.good_rounds[e] += 1;
            } else {
                self.good_rounds[e] -= 1;
            }
            let is_bad = self.good_rounds[e] == 0;
            if was_bad != is_bad {
                if is_bad {
                    self.bad[u] += 1;
                    self.bad[w] += 1;
                } else {
                    self.bad[u] -= 1;
                    self.bad[w] -= 1;
                }
                self.dirty_a.push(u);
                self.dirty_a.push(w);
            }
        }
        self.family.set(u, i, new);
    }

    fn flush(&mut self) {
        let mut df = std::mem::take(&mut self.dirty_df);
        df.sort_unstable();
        df.dedup();
        for &(v, i) in &df {
            self.evaluate_df(v, i);
        }
        let mut a = std::mem::take(&mut self.dirty_a);
        a.sort_unstable();
        a.dedup();
        for &v in &a {
            self.evaluate_a(v);
        }
        df.clear();
        a.clear();
        self.dirty_df = df;
        self.dirty_a = a;
    }

    fn resample_var(&mut self, u: usize, i: usize, rng: &mut Rng) {
        let q = draw(rng, &self.params.rounds[i].probs);
        self.set_part(u, i, q);
    }

    /// Redraws every variable of round `i`. Counts as one resampling.
    pub fn resample_round(&mut self, i: usize, rng: &mut Rng) -> Result<()> {
        self.charge()?;
        for u in 0..self.graph.vertex_count() {
            self.resample_var(u, i, rng);
        }
        self.flush();
        Ok(())
    }

    fn charge(&mut self) -> Result<()> {
        if self.resamples >= self.params.resample_cap {
            return Err(Error::ResampleCapExceeded { cap: self.params.resample_cap, residual: self.report() });
        }
        self.resamples += 1;
        Ok(())
    }

    /// Resamples the first violated event until none remains.
    pub fn run(&mut self, rng: &mut Rng) -> Result<()> {
        while let Some(&key) = self.violated.iter().next() {
            self.charge()?;
            if key.late {
                let v = key.vertex;
                let mut support: Vec<usize> = self.graph.neighbours(v).collect();
                support.push(v);
                support.sort_unstable();
                for j in 0..self.rounds.len() {
                    for &u in &support {
                        self.resample_var(u, j, rng);
                    }
                }
            } else {
                let (v, i) = (key.vertex, key.round);
                let mut support: Vec<usize> = self.rounds[i].neighbours(v).collect();
                support.push(v);
                support.sort_unstable();
                for &u in &support {
                    self.resample_var(u, i, rng);
                }
            }
            self.flush();
        }
        Ok(())
    }
}

/// Samples a family and resamples until every event holds. Returns the
/// family and the number of resamplings.
pub fn resample_until_good(
    graph: &Graph,
    rounds: &[Graph],
    params: &PipelineParameters,
    rng: &mut Rng,
) -> Result<(PartitionFamily, usize)> {
    let family = sample_partitions(params, graph.vertex_count(), rng)?;
    let mut r = Resampler::new(graph, rounds, params, family)?;
    r.run(rng)?;
    let resamples = r.resamples();
    Ok((r.into_family(), resamples))
}
