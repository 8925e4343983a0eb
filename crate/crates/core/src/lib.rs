//! Equivariant band-operator families over finitely described dynamical
//! systems.
//!
//! The crate is organised bottom-up:
//!
//! - [`dynsys`]: subshift points (periodic, Sturmian codings, concatenation
//!   sequences, explicit finite patterns) and torus rotations, with word
//!   combinatorics and limit-set witnesses.
//! - [`opfamily`]: band-operator families `A(x)` given by one local rule per
//!   diagonal, finite windows, Wiener norms and limit-operator enumeration.
//! - [`spectral`]: dense eigenvalues, smallest singular values,
//!   pseudospectra on grids, Floquet–Bloch spectra and Hausdorff distances.
//! - [`experiments`]: reproducible scenario checks with JSON reports.
//! - [`cli`]: configuration parsing and the `specband` command-line front end.
//!
//! All values are immutable after construction and can be shared across
//! threads.

pub mod cli;
pub mod dynsys;
pub mod experiments;
pub mod matrix;
pub mod opfamily;
pub mod spectral;

mod error;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
