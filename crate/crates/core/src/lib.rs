//! Minimum cut variants with side constraints.
//!
//! * [`graph`]: weighted graphs, max-flow, exact s-t cuts, component shrinking.
//! * [`cpmc`]: connectivity preserving minimum cuts and their exact oracle.
//! * [`planar`]: embeddings, weight perturbation, the 2-vs-2 procedure and its transformers.
//! * [`tmc`]: threshold minimum cuts, the LP rounding and bisection based solvers.
//! * [`reductions`]: hardness gadgets with certificates.
//! * [`io`]: instance documents, edge-list import and random generators.

pub mod cpmc;
pub mod error;
pub mod graph;
pub mod io;
pub mod planar;
pub mod reductions;
pub mod tmc;

pub use error::{Error, Result};
pub use graph::{CutKind, CutSolution, Weight, WeightedGraph};
