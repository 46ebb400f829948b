//! Toric geometry of support sets: polytopes, normal fans, Cox gradings,
//! divisor classes and lattice points.

pub mod fan;
pub mod lattice;
pub mod linalg;
pub mod polytope;

pub use fan::{codimension, divisor_class_and_homogenize, normal_fan, polytope_divisor, DivisorClass, ToricData};
pub use lattice::{lattice_points, Ineq};
pub use polytope::{auto_label, hull_and_facets, hull_of_points, minkowski_sum, Facet, LatticePolytope, SupportSet};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("support set is empty")]
    EmptySupport,
    #[error("duplicate support point {0:?}")]
    DuplicatePoint(Vec<i64>),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("polytope is not full-dimensional; pass the Minkowski sum of all supports")]
    NotFullDimensional,
    #[error("facet normal {0:?} is not a ray of the toric variety")]
    RayMismatch(Vec<i64>),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("internal error: {0}")]
    Internal(String),
}
