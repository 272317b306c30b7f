pub mod bounds;
pub mod correspondence;
pub mod error;
pub mod graph;
pub mod harness;
pub mod ncp;
pub mod numeric;
pub mod strong_edge;

pub use correspondence::{CorrespondenceAssignment, PartialColouring, Residual};
pub use error::{Error, Result};
pub use graph::Graph;

/// Colours are plain integers; palettes are sets of them.
pub type Colour = u32;
