//! Quasi-isometry classification of graph-manifold groups through minimal
//! bicolored graphs.
//!
//! * [`graph`] and [`format`]: bicolored multigraphs and their file formats.
//! * [`refine`]: weak coverings, bisimilarity and minimal graphs.
//! * [`census`]: counting minimal graphs by size and number of black vertices.
//! * [`unfold`]: finite-depth types of the bicolored Bass-Serre tree.
//! * [`artin`]: Artin presentation trees and their decomposition graphs.
//! * [`splice`]: splice diagrams of torus-link connected sums, an independent
//!   route to the same decomposition graphs.

pub mod artin;
pub mod census;
pub mod format;
pub mod graph;
pub mod refine;
pub mod splice;
pub mod unfold;

#[cfg(test)]
mod testutil;

pub use graph::{BicoloredGraph, Color, VertexMap};
pub use refine::{bisimilar, is_minimal, minimize, Coloring, Minimization};
