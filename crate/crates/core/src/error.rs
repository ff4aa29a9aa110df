use thiserror::Error;

use crate::graph::EdgeId;
use crate::pipeline::EventReport;

/// Which side of the two-stage matching construction failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum MatchingStage {
    /// Saturating `V1` inside `G[V1, V2]`.
    Base,
    /// Saturating `V2` inside `G[V1 ∪ V3, V2]`.
    Extension,
}

#[derive(Error, Debug)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0}")]
    DuplicateEdge(EdgeId),
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(EdgeId),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
    #[error("edge set does not belong to this graph: {0}")]
    ForeignEdgeSet(String),
    #[error("colouring does not match graph: {0}")]
    ColoringMismatch(String),
    #[error("colour {color} is tagged with more than one stage palette")]
    PaletteClash { color: u32 },

    #[error("balanced {k}-decomposition not reached within {cap} moves (pairwise discrepancy {pairwise})")]
    DiscrepancyNotAchieved { k: usize, cap: usize, pairwise: u32 },
    #[error("minimum degree hypothesis violated: delta = {delta_min} < {required:.3} (Delta = {delta_max})")]
    HypothesisViolated { delta_max: usize, delta_min: usize, required: f64 },
    #[error("parameters infeasible: {0}")]
    ParametersInfeasible(String),
    #[error("H'' degree window violated at vertex {vertex}: degree {degree} not in [{low:.3}, {high:.3}]")]
    DegreeWindowViolated { vertex: usize, degree: usize, low: f64, high: f64 },
    #[error("round degree bound violated: {0}")]
    BoundViolated(String),
    #[error("resample cap {cap} exceeded with {} residual violations", residual.violations.len())]
    ResampleCapExceeded { cap: usize, residual: EventReport },
    #[error("stage-two retry cap {cap} exceeded; {} edges still unsatisfied", unsatisfied.len())]
    Stage2CapExceeded { cap: usize, unsatisfied: Vec<EdgeId> },
    #[error("Hall condition fails in round {round:?} ({stage:?}): |S| = {}, |N(S)| = {}", witness.len(), neighbourhood.len())]
    HallViolation {
        stage: MatchingStage,
        round: Option<usize>,
        witness: Vec<usize>,
        neighbourhood: Vec<usize>,
    },
    #[error("conclusion violated: {0}")]
    ConclusionViolated(String),
    #[error("input colouring leaves {} edges unsatisfied", .0.len())]
    NotSatisfied(Vec<EdgeId>),
    #[error("input colouring is not proper")]
    NotProper,
    #[error("exact search limited to {cap} edges, graph has {edges}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable short name, used as the status column of experiment output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "Parse",
            Error::Loop(_) => "Loop",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::DuplicateEdge(_) => "DuplicateEdge",
            Error::NotAnEdge(_) => "NotAnEdge",
            Error::EmptyGraph => "EmptyGraph",
            Error::NoEdges => "NoEdges",
            Error::ForeignEdgeSet(_) => "ForeignEdgeSet",
            Error::ColoringMismatch(_) => "ColoringMismatch",
            Error::PaletteClash { .. } => "PaletteClash",
            Error::DiscrepancyNotAchieved { .. } => "DiscrepancyNotAchieved",
            Error::HypothesisViolated { .. } => "HypothesisViolated",
            Error::ParametersInfeasible(_) => "ParametersInfeasible",
            Error::DegreeWindowViolated { .. } => "DegreeWindowViolated",
            Error::BoundViolated(_) => "BoundViolated",
            Error::ResampleCapExceeded { .. } | Error::Stage2CapExceeded { .. } => {
                "ResampleCapExceeded"
            }
            Error::HallViolation { .. } => "HallViolation",
            Error::ConclusionViolated(_) => "ConclusionViolated",
            Error::NotSatisfied(_) => "NotSatisfied",
            Error::NotProper => "NotProper",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
