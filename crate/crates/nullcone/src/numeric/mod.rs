//! Forward-mode differentiation, small dense linear algebra and finite differences.
//!
//! [`HyperDual`] carries value, gradient and Hessian over a fixed number of active
//! directions. [`Jet`] is a truncated multivariate Taylor series of order up to three,
//! used where operators have to be composed (a Lie derivative of a Lie derivative needs
//! third derivatives of the defining function). Both implement [`Real`], so geometric
//! formulas are written once and evaluated on plain `f64`, hyper-duals or jets.

mod fd;
mod hyperdual;
mod jet;
mod linalg;
mod real;

pub use fd::{gradient, gradient_with, FdConfig};
pub use hyperdual::{hyperdual_eval, HyperDual, MAX_DIRS};
pub use jet::{Jet, JetSpace, MAX_JET_ORDER, MAX_JET_VARS};
pub use linalg::{null_space, rank_with_tolerance, NullSpace, Symmetry, Tensor4};
pub use real::{atan2, Real};

/// Default relative tolerance for numerical rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;
