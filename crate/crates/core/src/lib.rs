//! Exact-rational kernel for Graßmann and Clifford (bi)algebras on a
//! finite generating space `V = span{e1..en}`, `n <= 9`.
//!
//! The layers build on each other: [`exterior`] (wedge, co-product, counit),
//! [`pairing`] (cliffordization by bilinear forms), [`hopf`] (convolution,
//! antipodes, integrals), [`cayley`] (bracket, meet), [`renorm`] (free
//! pairings and ordering forms) and [`qft`] (field operators, vacua).
//! [`expr`] and [`config`] provide the text front end used by the CLI.

pub mod blade;
pub mod cayley;
pub mod config;
pub mod error;
pub mod expr;
pub mod exterior;
pub mod hopf;
pub mod linalg;
pub mod multivector;
pub mod pairing;
pub mod qft;
pub mod renorm;
pub mod scalar;
pub mod tensor;

pub use blade::Blade;
pub use error::{QcaError, Result};
pub use multivector::Multivector;
pub use scalar::Scalar;
pub use tensor::TensorPoly;

/// Largest supported number of generators.
pub const MAX_DIM: usize = 9;
