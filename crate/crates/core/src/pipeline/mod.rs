//! Stage one of the construction: parameters, random partitions, events
//! and resampling, saturating matchings.

pub mod matching;
pub mod params;
pub mod partition;
pub mod stage1;

pub use matching::build_matching;
pub use params::{Mode, Overrides, PipelineParameters, RoundParameters, Thresholds};
pub use partition::{
    check_events, resample_until_good, sample_partitions, EventKind, EventReport, PartitionFamily, Violation,
};
pub use stage1::{run_stage1, split_off_h, split_rounds, StageOneResult, StageOneSummary};
