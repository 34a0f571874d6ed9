//! Method of fundamental solutions for the 2-D interior Helmholtz
//! Dirichlet problem on analytic domains.
//!
//! The approximation is a linear combination of point sources
//! `(i/4) H_0^(1)(k|x - y_j|)` with charge points `y_j` placed outside the
//! closed domain. The crate provides:
//!
//! - [`specialfn`]: integer-order Bessel/Hankel evaluation, also in
//!   log-scaled form, plus large-order and WKBJ magnitude approximations;
//! - [`geometry`]: an analytic shape catalog with complex-parameter
//!   extension, Schwarz-function reflection, singularity location, and the
//!   charge-point placement strategies (concentric circle, annular curve,
//!   singularity-adapted curve);
//! - [`bdata`]: Dirichlet boundary data with known analytic-continuation
//!   singularities;
//! - [`discmodel`]: the exact layer-potential spectrum on the unit disc,
//!   its asymptotic approximations, the diagonal Fourier solver, and the
//!   finite-precision halting prediction;
//! - [`solver`]: dense collocation assembly, weighted least squares via QR,
//!   convergence sweeps and rate fits, field evaluation;
//! - [`config`] and [`runner`]: the file-driven experiment harness behind
//!   the `mfs` command-line binary and the examples.

pub mod bdata;
pub mod config;
pub mod csvio;
pub mod discmodel;
mod error;
pub mod geometry;
pub mod runner;
pub mod solver;
pub mod specialfn;

pub use error::{Error, Result};
pub use specialfn::LogScaled;
