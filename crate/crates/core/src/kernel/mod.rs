//! Exact integer geometry: lattice points, affine hulls and convex hulls.

mod exact;
mod hull;
mod json;
mod linalg;
mod point;
mod polytope;

pub use exact::{affine_sign, primitive_i64, Bits};
pub(crate) use exact::normal_vector;
pub use json::{points_from_json, polytope_from_json, polytope_to_json, PolytopeJson};
pub use linalg::{affine_dimension, AffineFlat};
pub use point::{box_points, range_points, LatticePoint};
pub use polytope::{convex_hull, key_of, parse_key, HalfSpace, Polytope, MAX_DIM};

