//! Exact closed subsets of character spheres.

mod ray;
mod set;

pub use ray::{Arc, Ray};
pub use set::{disjoint_pieces, Piece, SphereSet};

pub(crate) use set::arrangement_samples;
