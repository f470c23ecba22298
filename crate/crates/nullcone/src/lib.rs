//! Conformally flat spacetimes realized as sections of the null cone of R^{n+2}.
//!
//! A defining function `f`, homogeneous of degree one, cuts the cone `y.y = 0` in a
//! spacetime `X_f = {c(y) = 0, f(y) = 1}`. Everything here (metrics, curvature,
//! codifferentials, two-point functions, isometries) is computed from `f` and
//! cross-checked against independent intrinsic-geometry computations.
//!
//! Conventions: ambient index order `(0, 1..n-1, n, n+1)` with signature
//! `(+, -, ..., -, +)`; H = 1; de Sitter space has scalar curvature `-n(n-1)`.

pub mod cli;
pub mod curvature;
pub mod embedding;
pub mod error;
pub mod forms;
pub mod isometries;
pub mod numeric;
pub mod propagators;
pub mod scalefactor;
pub mod verify;

pub use error::{Error, Result};
