//! Hadamard constructions, exact values of the Gale–Berlekamp switching
//! game, norms of ±1 matrices and tensors, and re-verifiable bound
//! certificates.

pub mod bounds;
pub mod budget;
pub mod error;
pub mod hadamard;
pub mod norms;
pub mod render;
pub mod sign_matrix;
pub mod switching;

pub use error::{Error, Result};
pub use sign_matrix::SignMatrix;
pub use switching::LightGrid;
