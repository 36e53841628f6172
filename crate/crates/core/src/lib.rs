//! Friends-and-strangers graphs.
//!
//! For graphs `X` and `Y` on `n` vertices, FS(X, Y) has one vertex per
//! bijection `V(X) -> V(Y)`; two bijections are adjacent when they differ by
//! exchanging the images of an `X`-edge whose images form a `Y`-edge (a
//! *friendly swap*). This crate enumerates its components exactly for small
//! `n`, classifies graphs for the star case, builds the standard extremal
//! and gadget constructions, constructs explicit exchange sequences and runs
//! seeded random-graph experiments.

pub mod constructions;
pub mod embed;
pub mod exchanger;
pub mod experiments;
pub mod fs;
pub mod graph;
pub mod perm;
pub mod wilson;

pub use fs::{
    apply_sequence, components, components_capped, concordance_class, exchangeable, find_isolated_vertex,
    friendly_neighbors, is_isolated, Cap, ComponentSummary, FsError, Reachability,
};
pub use graph::{generator, sample, Family, Graph, GraphError, RandomModel, Side};
pub use perm::{Bijection, SwapMove, SwapSequence};
