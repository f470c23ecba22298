//! Exterior calculus on `R^{n+2}` with the metric `eta`, and the pullback of ambient
//! operators to a section `X_f`.
//!
//! Forms are stored densely over the `2^(n+2)` coordinate blades, a blade being the
//! bitmask of its indices. Ambient operators act on forms whose coefficients are
//! order-3 Taylor jets, so `d`, `delta`, Lie derivatives and `box` are exact. The
//! intrinsic side of the restriction identities is computed independently, by
//! central differences along the chart with the induced metric.

mod algebra;
mod field;
mod ops;
mod restrict;

pub use algebra::{grade_of, wedge_sign, Form};
pub use field::{FormField, Poly};
pub use ops::{
    check_on_section, codifferential, exterior_derivative, hodge_star, laplace_de_rham, lie_derivative, schouten_df,
    transverse_project, Ambient, Projectors, VectorField,
};
pub use restrict::{
    christoffel, conformal_scalar_residual, hessian_restriction_residual, intrinsic_box, intrinsic_d, intrinsic_delta,
    intrinsic_star, orientation_sign, pullback_form, pulled_field, restriction_residual, ChartField, Operator, Residual,
};

#[cfg(test)]
mod tests;
