//! Tight cycle decompositions of k-uniform hypergraphs.
//!
//! The crate is organised bottom-up: [`graph`] holds the hypergraph type and
//! divisibility calculus, [`walks`] the tight trail/tour primitives and tuple
//! algebra, [`tourtrail`] the residual calculus of tour-trail decompositions,
//! [`gadgets`] the explicit cycle gadgets, and [`absorb`] the augmentation,
//! transformer and absorber constructions built from them. [`solver`] provides
//! exact desk-scale decision procedures, [`randomized`] the seeded simulators
//! and [`extremal`] the lower-bound constructions.

pub mod absorb;
pub mod error;
pub mod extremal;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod randomized;
pub mod solver;
pub mod tourtrail;
pub mod walks;

pub use error::{Error, Outcome, Result};
pub use graph::{Edge, KGraph, Vertex};
pub use walks::{FreshVertexSupply, Tuple, Walk};
