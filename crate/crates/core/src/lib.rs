//! Game of Life on graphs.
//!
//! A synchronous two-state dynamics on the vertices of a finite simple graph,
//! together with the tools built on it: deterministic feature extraction by
//! label propagation, a one-sided graph isomorphism test, the Euclidean
//! distance between feature vectors, and phase-transition experiments over
//! exhaustive and random graph ensembles.

pub mod bitset;
pub mod cli;
pub mod conway;
pub mod error;
pub mod experiments;
pub mod features;
pub mod formats;
pub mod engine;
pub mod enumerate;
pub mod generators;
pub mod graph;
pub mod iso;
pub mod metric;

pub use engine::{simulate, step, GameParams, LifePattern, Outcome, Trajectory};
pub use error::{Error, Result};
pub use features::{extract_features, Block, FeatureVector};
pub use graph::{Graph, Permutation};
