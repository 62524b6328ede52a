//! Exact rational linear algebra and polyhedral geometry.

pub mod cone;
pub mod cover;
pub mod dd;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod rational;
pub mod subdivision;
pub mod triangulate;

pub use cone::{dual_cone, relative_interior_contains, Cone, HRep};
pub use cover::{covers, difference_is_empty};
pub use dd::{double_description, VRep};
pub use lp::{lp_max, solve_lp_sup, LpResult};
pub use polyhedron::Polyhedron;
pub use rational::{primitive, Q, QVec};
pub use subdivision::{regular_subdivision, Side, Subdivision, VectorConfiguration};
pub use triangulate::triangulate_cone;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("precondition failed: {0}")]
    Precondition(String),
}
