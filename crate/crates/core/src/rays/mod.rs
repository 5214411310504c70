//! Exact and floating ray sets, orthogonality and bases.

mod builtin;
mod gauss;
mod ray;

pub use builtin::{builtin_rayset, BUILTIN_RAYSETS};
pub use gauss::GaussianRational;
pub(crate) use ray::parse_complex;
pub use ray::{
    are_orthogonal, are_parallel, basis_membership, enumerate_bases, exclusivity_graph,
    inner_product, parse_rayset, serialize_rayset, Coordinates, Ray, RaySet, Scalar,
};
