//! Rational polyhedral geometry: cones, half-open cones, fans, triangulations,
//! polytopes and (mixed) volumes.

mod cone;
mod dd;
mod halfopen;
pub mod lattice;
mod polytope;

pub use cone::{dual_of_union, Cone};
pub use halfopen::{
    argmin_violation, cone_index, partition_boundary_orthant, refine_by_normal_fans, refine_by_point_sets, triangulate,
    triangulate_halfopen, triangulate_halfopen_seeded, Fan, HalfOpenCone, RefinedCell,
};
pub use lattice::IVec;
pub use polytope::{mixed_volume, mixed_volumes, Polytope};
