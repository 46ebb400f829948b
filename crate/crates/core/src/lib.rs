//! Sparse resultants and direct images of complexes on toric varieties,
//! computed through the Weyman complex in exact arithmetic.

pub mod exactarith;
pub mod fixtures;
pub mod toric;
pub mod complexes;
pub mod cech;
pub mod weyman;
pub mod resultant;
pub mod verify;
