use super::{parse_scale_factor, ScaleExpr};
use crate::embedding::Curvature;

/// Named scale factors with the spatial curvature they are meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `a = 1`; with k = ±1 an Einstein static space, with k = 0 Minkowski.
    Einstein,
    DsKm1,
    DsK0,
    DsKp1,
    AdsKm1,
    MinkKm1,
    MatterK0,
    RadiationK0,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Einstein,
        Preset::DsKm1,
        Preset::DsK0,
        Preset::DsKp1,
        Preset::AdsKm1,
        Preset::MinkKm1,
        Preset::MatterK0,
        Preset::RadiationK0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Einstein => "einstein",
            Preset::DsKm1 => "ds_km1",
            Preset::DsK0 => "ds_k0",
            Preset::DsKp1 => "ds_kp1",
            Preset::AdsKm1 => "ads_km1",
            Preset::MinkKm1 => "mink_km1",
            Preset::MatterK0 => "matter_k0",
            Preset::RadiationK0 => "radiation_k0",
        }
    }

    pub fn from_name(s: &str) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn source(self) -> &'static str {
        match self {
            Preset::Einstein => "1",
            Preset::DsKm1 => "csch(t)",
            Preset::DsK0 => "1/t",
            Preset::DsKp1 => "csc(t)",
            Preset::AdsKm1 => "sech(t)",
            Preset::MinkKm1 => "exp(-t)",
            Preset::MatterK0 => "t^2",
            Preset::RadiationK0 => "t",
        }
    }

    pub fn expr(self) -> ScaleExpr {
        let mut e = parse_scale_factor(self.source()).expect("preset sources parse");
        e.preset = Some(self);
        e
    }

    /// Spatial curvatures the preset is documented for.
    pub fn curvatures(self) -> &'static [Curvature] {
        use Curvature::*;
        match self {
            Preset::Einstein => &[Negative, Flat, Positive],
            Preset::DsKm1 | Preset::AdsKm1 | Preset::MinkKm1 => &[Negative],
            Preset::DsK0 | Preset::MatterK0 | Preset::RadiationK0 => &[Flat],
            Preset::DsKp1 => &[Positive],
        }
    }

    /// Conformal-time interval on which the preset is positive and sampled.
    pub fn sample_domain(self) -> (f64, f64) {
        match self {
            Preset::Einstein | Preset::AdsKm1 | Preset::MinkKm1 => (-1.5, 1.5),
            Preset::DsKm1 | Preset::DsK0 | Preset::MatterK0 | Preset::RadiationK0 => (0.1, 3.0),
            Preset::DsKp1 => (0.1, std::f64::consts::PI - 0.1),
        }
    }
}
