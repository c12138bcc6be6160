pub mod aperiodicity;
pub mod crosscheck;
pub mod cycles;
mod decimal;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ideals;
pub mod matrix;
pub mod paths;
pub mod random;
pub mod regression;
pub mod talented;

pub use error::{Error, Result};
pub use graph::{CycleSeq, Edge, Graph, PathSeq, Permutation, VertexSet};
pub use matrix::ExactMatrix;
