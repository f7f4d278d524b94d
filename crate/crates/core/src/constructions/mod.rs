//! Explicit polytope families and constructive move sequences.

mod families;
mod path;
mod pentagon;
mod simplex;

pub use families::{cartesian_product, corner_simplex, empty_simplex, pn_polygon, saturating_polytope};
pub use path::{connect_convex_position, in_convex_position, simplex_to_corner_path};
pub use pentagon::{
    flatten_pentagon, is_flat, is_oblique, make_strongly_flat, shear_multiplier, shear_params, shear_to_oblique,
    FlatWitness, ShearParams,
};
pub use simplex::{facet_frames, find_simplex_insertion, BoxFacet, SimplexFacetFrame};
