//! Stage two and the completions that make a colouring total.

pub mod completion;
pub mod misra_gries;
pub mod stage2;

pub use completion::{complete_one_color, complete_proper};
pub use misra_gries::misra_gries;
pub use stage2::{stage2_color, StageTwoResult, StageTwoState};
