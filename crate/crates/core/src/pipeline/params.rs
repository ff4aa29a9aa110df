use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `strict` enforces every hypothesis and constant of the construction and
/// refuses inputs where they do not hold; `practical` exposes overrides and
/// relies on verifying outcomes instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    #[default]
    Practical,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "practical" => Ok(Mode::Practical),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

/// Knobs honoured in practical mode. Strict mode ignores all of them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    /// Number of classes in the first split; `H''` is one class.
    pub k: Option<usize>,
    /// Number of rounds.
    pub s: Option<usize>,
    /// Multiplies `sqrt(Δ_i) ln Δ_i`. When unset, practical mode caps
    /// `3 ε_i / Δ_i` at [`AUTO_EPS_RATIO`].
    pub eps_scale: Option<f64>,
    /// Event relaxation: D/F thresholds move outward by
    /// `thresholds_scale * Δ_i / 4`, the A threshold is multiplied by
    /// `1 + thresholds_scale`. Zero gives the unrelaxed events. Default 1.
    pub thresholds_scale: Option<f64>,
    /// Maximum number of event resamplings. Default `1000 |V|`.
    pub resample_cap: Option<usize>,
    /// Stage-two palette size `M`.
    pub stage2_colors: Option<usize>,
    /// Stage-two global retries. Default 200.
    pub stage2_retries: Option<usize>,
}

/// Practical-mode default for `3 ε_i / Δ_i` when no `eps_scale` is given.
pub const AUTO_EPS_RATIO: f64 = 0.05;
pub const DEFAULT_THRESHOLDS_SCALE: f64 = 1.0;
pub const DEFAULT_STAGE2_RETRIES: usize = 200;

/// Event thresholds of one round. An event holds when the count lies on the
/// stated side of its threshold (strict inequalities).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// D_{v,1}: `R_1 < d1`.
    pub d1: f64,
    /// F_{v,2}: `R_2 > f2`.
    pub f2: f64,
    /// F_{v,13}: `R_13 > f13`.
    pub f13: f64,
    /// D_{v,2}: `R_2 < d2`.
    pub d2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundParameters {
    pub delta_max: usize,
    pub delta_min: usize,
    pub eps: f64,
    /// Probabilities of parts 1..=4.
    pub probs: [f64; 4],
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineParameters {
    pub mode: Mode,
    pub delta_max: usize,
    pub delta_min: usize,
    pub k: usize,
    pub s: usize,
    pub eps_scale: Option<f64>,
    pub thresholds_scale: f64,
    /// A_v holds when `B_v <= a_threshold`.
    pub a_threshold: f64,
    pub resample_cap: usize,
    pub stage2_colors: Option<usize>,
    pub stage2_retries: usize,
    /// Filled in by [`PipelineParameters::measure_rounds`].
    pub rounds: Vec<RoundParameters>,
}

/// `ln ln Δ`; `-inf`/NaN for `Δ <= 1`.
pub fn ln_ln(delta: usize) -> f64 {
    (delta as f64).ln().ln()
}

/// Smallest `Δ` with `δ >= Δ - 2 sqrt(Δ) log2 Δ` tolerated, as a real.
pub fn hypothesis_min_degree(delta_max: usize) -> f64 {
    let d = delta_max as f64;
    d - 2.0 * d.sqrt() * d.log2()
}

/// `ε_i = sqrt(Δ_i) ln Δ_i`, with 0 for an empty round.
pub fn base_eps(delta_i: usize) -> f64 {
    if delta_i == 0 {
        0.0
    } else {
        let d = delta_i as f64;
        d.sqrt() * d.ln()
    }
}

/// Part probabilities `(1/4 - 3x, 1/4, 6x, 1/2 - 3x)` with `x = ε_i/Δ_i`.
pub fn part_probabilities(delta_i: usize, eps: f64) -> [f64; 4] {
    let x = if delta_i == 0 { 0.0 } else { eps / delta_i as f64 };
    [0.25 - 3.0 * x, 0.25, 6.0 * x, 0.5 - 3.0 * x]
}

pub fn probabilities_valid(p: &[f64; 4]) -> bool {
    p.iter().all(|&q| (0.0..=1.0).contains(&q))
}

/// Least `Δ_i >= 2` for which the unscaled probabilities are all valid.
pub fn min_feasible_round_degree() -> usize {
    (2..).find(|&d| probabilities_valid(&part_probabilities(d, base_eps(d)))).unwrap()
}

fn thresholds(delta_i: usize, eps: f64, scale: f64) -> Thresholds {
    let q = delta_i as f64 / 4.0;
    let relax = scale * q;
    Thresholds {
        d1: q - 2.0 * eps + relax,
        f2: q - 2.0 * eps - relax,
        f13: q + eps - relax,
        d2: q + eps + relax,
    }
}

impl PipelineParameters {
    /// Global parameters from Δ and δ of `graph`. Per-round values are added
    /// by [`measure_rounds`](Self::measure_rounds).
    pub fn derive(graph: &Graph, mode: Mode, overrides: &Overrides) -> Result<Self> {
        let n = graph.vertex_count();
        let delta_max = graph.max_degree_or_zero();
        let delta_min = graph.min_degree().unwrap_or(0);
        Self::derive_from_degrees(n, delta_max, delta_min, mode, overrides)
    }

    pub fn derive_from_degrees(
        n: usize,
        delta_max: usize,
        delta_min: usize,
        mode: Mode,
        overrides: &Overrides,
    ) -> Result<Self> {
        match mode {
            Mode::Strict => Self::derive_strict(n, delta_max, delta_min),
            Mode::Practical => Self::derive_practical(n, delta_max, delta_min, overrides),
        }
    }

    fn derive_strict(n: usize, delta_max: usize, delta_min: usize) -> Result<Self> {
        if delta_max < 3 {
            return Err(Error::ParametersInfeasible(format!(
                "Δ = {delta_max}: ln ln Δ must exceed 2/290, which needs Δ >= 3"
            )));
        }
        let required = hypothesis_min_degree(delta_max);
        if (delta_min as f64) < required {
            return Err(Error::HypothesisViolated { delta_max, delta_min, required });
        }
        let ll = ln_ln(delta_max);
        let k = (delta_max as f64 / (290.0 * ll - 2.0)).ceil() as usize;
        let s = (delta_max as f64).log2().ceil() as usize;
        // Every round will have Δ_i >= δ_i >= Δ/s - 3 sqrt(Δ); below the
        // feasibility threshold the probabilities go negative.
        let lower = delta_max as f64 / s as f64 - 3.0 * (delta_max as f64).sqrt();
        let min_ok = min_feasible_round_degree();
        if lower < min_ok as f64 {
            let at = lower.max(2.0).floor() as usize;
            let p = part_probabilities(at, base_eps(at));
            return Err(Error::ParametersInfeasible(format!(
                "rounds may have Δ_i as low as {lower:.1}; Pr(part 1) = 1/4 - 3ε_i/Δ_i = {:.4} there; \
                 the minimum feasible Δ_i is {min_ok}",
                p[0]
            )));
        }
        Ok(PipelineParameters {
            mode: Mode::Strict,
            delta_max,
            delta_min,
            k: k.max(1),
            s: s.max(1),
            eps_scale: None,
            thresholds_scale: 0.0,
            a_threshold: 3.0 * (delta_max as f64).ln() - 3.0,
            resample_cap: 1000 * n.max(1),
            stage2_colors: None,
            stage2_retries: DEFAULT_STAGE2_RETRIES,
            rounds: Vec::new(),
        })
    }

    fn derive_practical(n: usize, delta_max: usize, delta_min: usize, o: &Overrides) -> Result<Self> {
        let k = match o.k {
            Some(0) => return Err(Error::InvalidArgument("k must be at least 1".into())),
            Some(k) => k,
            None => {
                let denom = 290.0 * ln_ln(delta_max) - 2.0;
                if delta_max >= 3 && denom > 0.0 {
                    (delta_max as f64 / denom).ceil().max(1.0) as usize
                } else {
                    1
                }
            }
        };
        let s = match o.s {
            Some(0) => return Err(Error::InvalidArgument("s must be at least 1".into())),
            Some(s) => s,
            None if delta_max <= 1 => 1,
            None => (delta_max as f64).log2().ceil() as usize,
        };
        if let Some(e) = o.eps_scale {
            if !(e >= 0.0 && e.is_finite()) {
                return Err(Error::InvalidArgument(format!("eps_scale must be finite and >= 0, got {e}")));
            }
        }
        let tau = o.thresholds_scale.unwrap_or(DEFAULT_THRESHOLDS_SCALE);
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::InvalidArgument(format!("thresholds_scale must be finite and >= 0, got {tau}")));
        }
        if o.stage2_colors == Some(0) {
            return Err(Error::InvalidArgument("stage2_colors must be at least 1".into()));
        }
        let a_base = if delta_max >= 1 { 3.0 * (delta_max as f64).ln() - 3.0 } else { 0.0 };
        Ok(PipelineParameters {
            mode: Mode::Practical,
            delta_max,
            delta_min,
            k,
            s,
            eps_scale: o.eps_scale,
            thresholds_scale: tau,
            a_threshold: a_base * (1.0 + tau),
            resample_cap: o.resample_cap.unwrap_or(1000 * n.max(1)),
            stage2_colors: o.stage2_colors,
            stage2_retries: o.stage2_retries.unwrap_or(DEFAULT_STAGE2_RETRIES),
            rounds: Vec::new(),
        })
    }

    /// ε for a round of maximum degree `delta_i` under this mode.
    pub fn round_eps(&self, delta_i: usize) -> f64 {
        let base = base_eps(delta_i);
        match (self.mode, self.eps_scale) {
            (Mode::Strict, _) => base,
            (Mode::Practical, Some(scale)) => scale * base,
            (Mode::Practical, None) => base.min(AUTO_EPS_RATIO * delta_i as f64 / 3.0),
        }
    }

    /// Records Δ_i, δ_i, ε_i, the part distribution and the event thresholds
    /// of every round. Fails if a distribution is not a probability vector.
    pub fn measure_rounds(&mut self, rounds: &[Graph]) -> Result<()> {
        self.rounds.clear();
        for (i, g) in rounds.iter().enumerate() {
            let delta_max = g.max_degree_or_zero();
            let delta_min = g.min_degree().unwrap_or(0);
            let eps = self.round_eps(delta_max);
            let probs = part_probabilities(delta_max, eps);
            if !probabilities_valid(&probs) {
                return Err(Error::ParametersInfeasible(format!(
                    "round {i}: Δ_i = {delta_max}, ε_i = {eps:.3} gives part probabilities {probs:?}; \
                     the minimum feasible Δ_i is {}",
                    min_feasible_round_degree()
                )));
            }
            self.rounds.push(RoundParameters {
                delta_max,
                delta_min,
                eps,
                probs,
                thresholds: thresholds(delta_max, eps, self.thresholds_scale),
            });
        }
        Ok(())
    }

    /// Uniform per-round parameters, for building families without graphs.
    pub fn with_uniform_rounds(mut self, delta_i: usize, eps: f64) -> Result<Self> {
        let probs = part_probabilities(delta_i, eps);
        if !probabilities_valid(&probs) {
            return Err(Error::ParametersInfeasible(format!("probabilities {probs:?}")));
        }
        let round = RoundParameters {
            delta_max: delta_i,
            delta_min: delta_i,
            eps,
            probs,
            thresholds: thresholds(delta_i, eps, self.thresholds_scale),
        };
        self.rounds = vec![round; self.s];
        Ok(self)
    }

    /// Stage-two palette size `M = floor(3999 ln ln Δ)` in strict mode.
    pub fn strict_stage2_colors(&self) -> usize {
        (3999.0 * ln_ln(self.delta_max)).floor().max(1.0) as usize
    }
}
