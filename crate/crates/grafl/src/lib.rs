//! # grafl
//!
//! A graph representation learning engine. Starting from a set of base graph
//! features (degrees, k-core numbers, egonet counts, graphlet orbit counts,
//! lifted attributes), `grafl` composes higher-order node/edge features by
//! repeatedly applying relational operators (sum, mean, max, Hadamard,
//! weighted-Lp, RBF) over neighborhoods, pruning each feature layer down to
//! its non-redundant representatives. Every learned feature is a serializable
//! *relational function*, so the identical feature set can be re-extracted on
//! any other graph.
//!
//! The main entry points are [`learn::learn`], [`learn::extract`], and the
//! [`graph::Graph`] loader. The `task` module has desk-scale evaluation
//! harnesses (link prediction, node classification, across-network transfer).

pub mod algebra;
pub mod base;
pub mod diffuse;
pub mod error;
pub mod gen;
pub mod graph;
pub mod learn;
pub mod matrix;
pub mod orbits;
pub mod select;
pub mod task;

pub use error::{GraflError, Result};
pub use graph::{Direction, ElementKind, Graph, GraphElement, NeighborhoodSelector};
pub use matrix::{FeatureColumn, FeatureMatrix, MatrixStats};
