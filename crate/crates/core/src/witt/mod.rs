//! Witt vectors over the perfectoid field and the `λ_t` norms.

pub mod group_ring;
pub mod lambda;
pub mod structure;
pub mod teich;
pub mod vector;

pub use group_ring::{invert_by_domination, witt_cross_check, Dim0Inverse, GroupRingElement};
pub use lambda::{
    dominant_term, lambda_bound, lambda_interval, lambda_norm, sigma_membership, Dominance, LambdaParam,
};
pub use structure::{witt_structure_polys, StructurePolys, WITT_LENGTH_CEILING};
pub use teich::TeichSum;
pub use vector::{teichmuller, WittVector};
