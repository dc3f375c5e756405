//! Periodic crystal graphs for graph networks.
//!
//! The crate turns crystal structures (from CIF or JSON) into directed
//! periodic multigraphs using kNN, radius or Voronoi edge selection, merges
//! symmetry-equivalent atoms into asymmetric-unit graphs, builds line graphs
//! with angle features, and runs a deterministic nested graph-network forward
//! pass that checks those representations give identical predictions.

pub mod cif;
pub mod elements;
pub mod graph;
pub mod line_graph;
pub mod ndjson;
pub mod ngn;
pub mod neighbors;
pub mod pipeline;
pub mod stats;
pub mod structure;
pub mod symmetry;
pub mod voronoi;

pub use neighbors::{NeighborConfig, NeighborMethod, PeriodicEdge};
pub use structure::{AtomSite, CrystalStructure, Lattice};
