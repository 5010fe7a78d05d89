//! Exact and randomized dicolouring of digraphs.

pub mod asr;
pub mod bounds;
pub mod canon;
pub mod choosability;
pub mod constants;
pub mod dense;
pub mod digraph;
pub mod error;
pub mod exact;
pub mod generators;
pub mod matching;
pub mod params;
pub mod solver;
pub mod sparse;
pub mod transversal;

pub use digraph::{Digraph, Graph, VertexMap};
pub use error::{Error, Result};
