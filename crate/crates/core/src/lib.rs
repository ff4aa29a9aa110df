//! Open conflict-free edge colourings.
//!
//! An edge colouring is *open conflict-free* when every edge that has a
//! neighbour sees some colour exactly once among the edges sharing an
//! endpoint with it. This crate verifies such colourings, computes the least
//! number of colours exactly on small graphs, and builds colourings of
//! nearly regular graphs with a randomized two-stage construction.

pub mod coloring;
pub mod decompose;
pub mod error;
pub mod exact;
pub mod finisher;
pub mod formats;
pub mod graph;
pub mod pipeline;
pub mod randgraph;
pub mod rng;
pub mod solve;
pub mod verify;

pub use coloring::{PartialEdgeColoring, Stage};
pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeSet, Graph};
