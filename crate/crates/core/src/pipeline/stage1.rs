//! Stage one: split off `H''`, cut `H'` into rounds, colour one saturating
//! matching per round, and sort the edges into satisfied (`G'`) and the rest
//! (`G''`).

use serde::Serialize;

use super::matching::build_matching;
use super::params::{ln_ln, Mode, PipelineParameters};
use super::partition::{sample_partitions, PartitionFamily, Resampler};
use crate::coloring::{PartialEdgeColoring, Stage};
use crate::decompose::{balanced_decompose, Strictness};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::rng::{child_rng, derive_seed, tag};
use crate::verify::SatisfactionIndex;

fn strictness(mode: Mode) -> Strictness {
    match mode {
        Mode::Strict => Strictness::Strict,
        Mode::Practical => Strictness::Relaxed,
    }
}

/// `(H'', H')`: one class of a balanced `k`-decomposition and the rest.
/// Strict mode checks `289 ln ln Δ <= d_{H''}(v) <= 290 ln ln Δ`.
pub fn split_off_h(graph: &Graph, params: &PipelineParameters, seed: u64) -> Result<(EdgeSet, EdgeSet)> {
    let d = balanced_decompose(graph, params.k, seed, strictness(params.mode))?;
    let h2 = EdgeSet::from_indices(graph, d.class_indices().swap_remove(0));
    let h1 = EdgeSet::all(graph).difference(&h2);
    if params.mode == Mode::Strict {
        let ll = ln_ln(params.delta_max);
        let (low, high) = (289.0 * ll, 290.0 * ll);
        for (v, &deg) in graph.degrees_in(&h2).iter().enumerate() {
            if (deg as f64) < low || (deg as f64) > high {
                return Err(Error::DegreeWindowViolated { vertex: v, degree: deg, low, high });
            }
        }
    }
    Ok((h2, h1))
}

/// Balanced `s`-decomposition of `h_prime`, as edge sets of `graph` and as
/// spanning subgraphs. Strict mode checks `Δ_i <= Δ/s + 2` and
/// `δ_i >= Δ/s - 3 sqrt(Δ)`.
pub fn split_rounds(
    graph: &Graph,
    h_prime: &EdgeSet,
    params: &PipelineParameters,
    seed: u64,
) -> Result<(Vec<EdgeSet>, Vec<Graph>)> {
    let h = graph.subgraph_from_edges(h_prime)?;
    let d = balanced_decompose(&h, params.s, seed, strictness(params.mode))?;
    let mut sets = Vec::with_capacity(params.s);
    let mut rounds = Vec::with_capacity(params.s);
    for class in d.class_indices() {
        let in_g: Vec<usize> = class.iter().map(|&j| h_prime.indices()[j]).collect();
        let set = EdgeSet::from_indices(graph, in_g);
        rounds.push(graph.subgraph_from_edges(&set)?);
        sets.push(set);
    }
    if params.mode == Mode::Strict {
        let per = params.delta_max as f64 / params.s as f64;
        let (hi, lo) = (per + 2.0, per - 3.0 * (params.delta_max as f64).sqrt());
        for (i, g) in rounds.iter().enumerate() {
            let (dmax, dmin) = (g.max_degree_or_zero(), g.min_degree().unwrap_or(0));
            if dmax as f64 > hi || (dmin as f64) < lo {
                return Err(Error::BoundViolated(format!(
                    "round {i}: Δ_i = {dmax}, δ_i = {dmin}, required δ_i >= {lo:.3} and Δ_i <= {hi:.3}"
                )));
            }
        }
    }
    Ok((sets, rounds))
}

#[derive(Debug, Clone)]
pub struct StageOneResult {
    pub params: PipelineParameters,
    /// Colours `1..=s`; colour `i + 1` is the matching of round `i`.
    pub coloring: PartialEdgeColoring,
    pub h_prime: EdgeSet,
    /// `U = E(H'')`, all uncoloured.
    pub u_set: EdgeSet,
    pub g_prime: EdgeSet,
    pub g_double_prime: EdgeSet,
    pub round_sets: Vec<EdgeSet>,
    pub rounds: Vec<Graph>,
    pub family: PartitionFamily,
    /// Matching of each round, as edge indices of the whole graph.
    pub matchings: Vec<Vec<usize>>,
    /// Event resamplings, including whole-round redraws after Hall failures.
    pub resamples: usize,
    pub hall_retries: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundSummary {
    pub round: usize,
    pub delta_max: usize,
    pub delta_min: usize,
    pub eps: f64,
    pub edges: usize,
    pub parts: [usize; 4],
    pub matching_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageOneSummary {
    pub parameters: PipelineParameters,
    pub rounds: Vec<RoundSummary>,
    pub resamples: usize,
    pub hall_retries: usize,
    pub g_prime: usize,
    pub g_double_prime: usize,
    pub u: usize,
    pub stage1_colors: usize,
}

impl StageOneResult {
    pub fn summary(&self) -> StageOneSummary {
        StageOneSummary {
            parameters: self.params.clone(),
            rounds: (0..self.rounds.len())
                .map(|i| RoundSummary {
                    round: i,
                    delta_max: self.params.rounds[i].delta_max,
                    delta_min: self.params.rounds[i].delta_min,
                    eps: self.params.rounds[i].eps,
                    edges: self.round_sets[i].len(),
                    parts: self.family.sizes(i),
                    matching_size: self.matchings[i].len(),
                })
                .collect(),
            resamples: self.resamples,
            hall_retries: self.hall_retries,
            g_prime: self.g_prime.len(),
            g_double_prime: self.g_double_prime.len(),
            u: self.u_set.len(),
            stage1_colors: self.coloring.colors_used_in(Stage::Stage1),
        }
    }
}

/// Runs stage one. `params` comes from [`PipelineParameters::derive`];
/// its per-round fields are filled in here.
pub fn run_stage1(graph: &Graph, params: &PipelineParameters, seed: u64) -> Result<StageOneResult> {
    let mut params = params.clone();
    let n = graph.vertex_count();
    let (u_set, h_prime) = split_off_h(graph, &params, derive_seed(seed, &[tag::SPLIT_H]))?;
    let (round_sets, rounds) = split_rounds(graph, &h_prime, &params, derive_seed(seed, &[tag::SPLIT_ROUNDS]))?;
    params.measure_rounds(&rounds)?;

    let mut rng = child_rng(seed, &[tag::PARTITIONS]);
    let family = sample_partitions(&params, n, &mut rng)?;
    let mut hall_retries = 0;
    let (family, resamples, matchings) = if h_prime.is_empty() {
        // Nothing to colour; the events only constrain H' edges' rounds.
        (family, 0, vec![Vec::new(); params.s])
    } else {
        let mut sampler = Resampler::new(graph, &rounds, &params, family)?;
        'outer: loop {
            sampler.run(&mut rng)?;
            let mut matchings = Vec::with_capacity(rounds.len());
            for (i, g) in rounds.iter().enumerate() {
                match build_matching(g, sampler.family().round(i)) {
                    Ok(m) => matchings.push(m.indices().iter().map(|&j| round_sets[i].indices()[j]).collect()),
                    Err(Error::HallViolation { stage, witness, neighbourhood, .. }) => {
                        if params.mode == Mode::Strict {
                            return Err(Error::HallViolation { stage, round: Some(i), witness, neighbourhood });
                        }
                        hall_retries += 1;
                        sampler.resample_round(i, &mut rng)?;
                        continue 'outer;
                    }
                    Err(e) => return Err(e),
                }
            }
            let resamples = sampler.resamples();
            break (sampler.into_family(), resamples, matchings);
        }
    };

    let mut coloring = PartialEdgeColoring::uncolored(graph);
    coloring.reserve(Stage::Stage1, 1..=params.s as u32)?;
    for (i, m) in matchings.iter().enumerate() {
        for &e in m {
            coloring.set(e, Some(i as u32 + 1));
        }
    }
    check_matchings(graph, &matchings)?;

    let index = SatisfactionIndex::new(graph, &coloring)?;
    let g_prime = EdgeSet::from_indices(graph, h_prime.indices().iter().copied().filter(|&e| index.is_satisfied(e)));
    let h_triple = h_prime.difference(&g_prime);
    let g_double_prime = u_set.union(&h_triple);

    let result = StageOneResult {
        params,
        coloring,
        h_prime,
        u_set,
        g_prime,
        g_double_prime,
        round_sets,
        rounds,
        family,
        matchings,
        resamples,
        hall_retries,
    };
    check_invariants(graph, &result)?;
    Ok(result)
}

fn check_matchings(graph: &Graph, matchings: &[Vec<usize>]) -> Result<()> {
    let mut stamp = vec![usize::MAX; graph.vertex_count()];
    for (i, m) in matchings.iter().enumerate() {
        for &e in m {
            let ed = graph.edge(e);
            for w in [ed.u, ed.v] {
                if stamp[w] == i {
                    return Err(Error::ConclusionViolated(format!("colour {} is not a matching at vertex {w}", i + 1)));
                }
                stamp[w] = i;
            }
        }
    }
    Ok(())
}

/// Edges in good configuration in round `i` have exactly one endpoint
/// covered by the colour-`i` matching.
fn check_certificate(graph: &Graph, r: &StageOneResult) -> Result<()> {
    let n = graph.vertex_count();
    let mut covered = vec![false; n];
    for (i, m) in r.matchings.iter().enumerate() {
        if r.round_sets[i].is_empty() {
            continue;
        }
        covered.iter_mut().for_each(|c| *c = false);
        for &e in m {
            let ed = graph.edge(e);
            covered[ed.u] = true;
            covered[ed.v] = true;
        }
        for e in graph.edges() {
            let good = super::partition::good_configuration(r.family.part(e.u, i), r.family.part(e.v, i));
            if good && covered[e.u] == covered[e.v] {
                return Err(Error::ConclusionViolated(format!("edge {e} is good in round {i} but not certified")));
            }
        }
    }
    Ok(())
}

fn check_invariants(graph: &Graph, r: &StageOneResult) -> Result<()> {
    if !r.g_prime.is_disjoint(&r.g_double_prime) || r.g_prime.len() + r.g_double_prime.len() != graph.edge_count() {
        return Err(Error::ConclusionViolated("G' and G'' do not partition E(G)".into()));
    }
    if r.u_set.indices().iter().any(|&e| r.coloring.get(e).is_some()) {
        return Err(Error::ConclusionViolated("an edge of U is coloured".into()));
    }
    check_certificate(graph, r)?;
    let used = r.coloring.colors_used_in(Stage::Stage1);
    if used > r.params.s {
        return Err(Error::ConclusionViolated(format!("{used} stage-one colours exceed s = {}", r.params.s)));
    }
    if r.params.mode == Mode::Strict {
        let delta = r.params.delta_max as f64;
        if used as f64 > delta.log2() + 1.0 {
            return Err(Error::ConclusionViolated(format!("{used} colours exceed log2 Δ + 1")));
        }
        let bound = 4.0 * delta.ln();
        for (v, &d) in graph.degrees_in(&r.g_double_prime).iter().enumerate() {
            if d as f64 > bound {
                return Err(Error::ConclusionViolated(format!("d_G''({v}) = {d} exceeds 4 ln Δ = {bound:.3}")));
            }
        }
    }
    Ok(())
}
