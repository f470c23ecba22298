//! Sections of the null cone: FLRW embeddings, defining functions, chart presets,
//! induced metrics and the conformal action of SO(2,n).

mod ambient;
mod chart;
mod charts;
mod conformal;
mod defining;
mod flrw;
mod minkowski;

pub use ambient::{c_of, eta, eta_diag, eta_dot, Curvature};
pub use chart::{sphere, sphere_angles, sphere_metric_diag, ChartPoint};
pub use charts::{chart_jet, chart_preset, induced_metric, ChartJet, ChartKind, ChartMap, ChartPreset, FlrwChart, PresetChart};
pub use conformal::{conformal_action, plane_generator, random_group_element, rescale_between_sections};
pub use defining::{defining_function_value, DefiningFunction, FValue};
pub use flrw::{embed_point, Flrw};
pub use minkowski::{
    mink_base_conformal_factor, mink_exponential_factor, mink_to_flrw, mink_to_flrw_exponential,
};

/// Largest supported spacetime dimension `n` (ambient dimension `n + 2`).
pub const MAX_N: usize = 6;
