//! Exact arithmetic: rationals, sparse polynomials, matrices, Smith normal
//! form, fraction-free determinants and perfect-power extraction.

pub mod bareiss;
pub mod kthroot;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod polymatrix;
pub mod rational;
pub mod snf;

pub use bareiss::bareiss_det;
pub use kthroot::{kth_root_poly, perfect_power, Root};
pub use matrix::{RationalMatrix, RrefCertificate};
pub use poly::{Monomial, Ring, SparsePoly};
pub use polymatrix::PolyMatrix;
pub use rational::Q;
pub use snf::{smith_normal_form, SnfResult};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division left a remainder")]
    InexactDivision,
    #[error("matrix is singular")]
    Singular,
    #[error("integer overflow in lattice computation")]
    Overflow,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}
