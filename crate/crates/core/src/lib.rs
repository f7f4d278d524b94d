//! Elementary insertion and deletion moves on lattice polytopes.
//!
//! A lattice point `x` can be inserted in a full-dimensional polytope `P` when
//! the hull of `P ∪ {x}` keeps every vertex of `P` and gains `x`; a vertex can
//! be deleted when the remaining vertices still span a full-dimensional hull.
//! The crate provides an exact kernel for these moves, explicit polytope
//! families, constructive move sequences, the move graph on the polytopes of
//! `[0,k]^d` and a Markov chain with uniform stationary distribution on it.

pub mod constructions;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod moves;
pub mod sampler;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{convex_hull, HalfSpace, LatticePoint, Polytope};
pub use moves::{Cone, Move, MoveKind, MoveTrace};

