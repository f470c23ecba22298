use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::numeric::{rank_with_tolerance, HyperDual, Real};
use crate::scalefactor::Preset;

use super::{eta_diag, Curvature, DefiningFunction, Flrw};

/// A parametrization of a section of the null cone by `n` chart coordinates.
pub trait ChartMap: Send + Sync {
    fn chart_dim(&self) -> usize;
    fn map_hd(&self, x: &[HyperDual]) -> Result<Vec<HyperDual>>;
    fn map(&self, x: &[f64]) -> Result<Vec<f64>>;
    /// Defining function of the section the chart lands on.
    fn defining_function(&self) -> DefiningFunction;
    /// Metric in closed form, for comparison with the Jacobian pullback.
    fn closed_form_metric(&self, x: &[f64]) -> Result<DMatrix<f64>>;

    fn ambient_dim(&self) -> usize {
        self.chart_dim() + 2
    }
}

/// Embedded point with first and second derivatives of the chart map.
#[derive(Clone, Debug)]
pub struct ChartJet {
    pub y: Vec<f64>,
    /// `(n + 2) x n` Jacobian `dy^a / dx^mu`.
    pub jac: DMatrix<f64>,
    /// Per ambient component `a`, the `n x n` matrix `d^2 y^a / dx^mu dx^nu`.
    pub second: Vec<DMatrix<f64>>,
}

impl ChartJet {
    /// `J^T eta J`.
    pub fn metric(&self) -> DMatrix<f64> {
        let e = DMatrix::from_diagonal(&DVector::from_vec(eta_diag(self.y.len())));
        self.jac.transpose() * e * &self.jac
    }
}

pub fn chart_jet(map: &dyn ChartMap, x: &[f64]) -> Result<ChartJet> {
    let n = map.chart_dim();
    if x.len() != n {
        return Err(Error::Invalid(format!("expected {n} chart coordinates, got {}", x.len())));
    }
    let ys = map.map_hd(&HyperDual::seed(x))?;
    if ys.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite chart derivatives".into()));
    }
    let dim = ys.len();
    let g = |v: &HyperDual, j: usize| v.grad().get(j).copied().unwrap_or(0.0);
    let jac = DMatrix::from_fn(dim, n, |a, mu| g(&ys[a], mu));
    let second = ys
        .iter()
        .map(|v| DMatrix::from_fn(n, n, |i, j| if v.dirs() > 0 { v.hess(i, j) } else { 0.0 }))
        .collect();
    Ok(ChartJet { y: ys.iter().map(|v| v.value()).collect(), jac, second })
}

/// Pullback `J^T eta J` of the ambient metric, rejecting rank-deficient charts.
pub fn induced_metric(map: &dyn ChartMap, x: &[f64]) -> Result<DMatrix<f64>> {
    let jet = chart_jet(map, x)?;
    let r = rank_with_tolerance(&jet.jac, 1e-10);
    if r < map.chart_dim() {
        return Err(Error::DegenerateChart(format!("Jacobian rank {r} < {} at {x:?}", map.chart_dim())));
    }
    Ok(jet.metric())
}

/// Coordinate system on an FLRW section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    /// `(t, chi, angles)`.
    Spherical,
    /// `(t, r^1, ..., r^{n-1})` with `r = sinh chi, chi, sin chi`.
    Cartesian,
}

/// An FLRW section together with a choice of chart.
#[derive(Clone, Debug, PartialEq)]
pub struct FlrwChart {
    pub flrw: Flrw,
    pub kind: ChartKind,
}

impl FlrwChart {
    pub fn spherical(flrw: Flrw) -> Self {
        FlrwChart { flrw, kind: ChartKind::Spherical }
    }

    pub fn cartesian(flrw: Flrw) -> Self {
        FlrwChart { flrw, kind: ChartKind::Cartesian }
    }

    fn embed<S: Real>(&self, x: &[S]) -> Result<Vec<S>> {
        match self.kind {
            ChartKind::Spherical => self.flrw.embed_spherical(x),
            ChartKind::Cartesian => self.flrw.embed_cartesian(x),
        }
    }
}

impl ChartMap for FlrwChart {
    fn chart_dim(&self) -> usize {
        self.flrw.n
    }
    fn map_hd(&self, x: &[HyperDual]) -> Result<Vec<HyperDual>> {
        self.embed(x)
    }
    fn map(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.embed(x)
    }
    fn defining_function(&self) -> DefiningFunction {
        self.flrw.defining_function()
    }
    fn closed_form_metric(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        match self.kind {
            ChartKind::Spherical => self.flrw.closed_form_metric(x),
            ChartKind::Cartesian => self.flrw.closed_form_metric_cartesian(x),
        }
    }
}

/// Named charts on the de Sitter, anti-de Sitter and Minkowski sections (H = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartPreset {
    /// Minkowski in cartesian coordinates `xi`, on `f = y^n + y^{n+1}`.
    MinkGlobal,
    /// de Sitter half, `xi.xi > -1`, on `f = y^{n+1}`.
    DsHalf,
    /// anti-de Sitter, `xi.xi < 1`, on `f = y^n`.
    Ads,
    DsFlrwKm1,
    DsFlrwK0,
    DsFlrwKp1,
    MinkFlrwKm1,
    AdsFlrwKm1,
}

impl ChartPreset {
    pub const ALL: [ChartPreset; 8] = [
        ChartPreset::MinkGlobal,
        ChartPreset::DsHalf,
        ChartPreset::Ads,
        ChartPreset::DsFlrwKm1,
        ChartPreset::DsFlrwK0,
        ChartPreset::DsFlrwKp1,
        ChartPreset::MinkFlrwKm1,
        ChartPreset::AdsFlrwKm1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChartPreset::MinkGlobal => "mink_global",
            ChartPreset::DsHalf => "ds_half",
            ChartPreset::Ads => "ads",
            ChartPreset::DsFlrwKm1 => "ds_flrw_km1",
            ChartPreset::DsFlrwK0 => "ds_flrw_k0",
            ChartPreset::DsFlrwKp1 => "ds_flrw_kp1",
            ChartPreset::MinkFlrwKm1 => "mink_flrw_km1",
            ChartPreset::AdsFlrwKm1 => "ads_flrw_km1",
        }
    }

    pub fn from_name(s: &str) -> Option<ChartPreset> {
        ChartPreset::ALL.into_iter().find(|p| p.name() == s)
    }

    /// Sectional curvature `kappa` of the section (`F^2`).
    pub fn kappa(self) -> f64 {
        match self {
            ChartPreset::MinkGlobal | ChartPreset::MinkFlrwKm1 => 0.0,
            ChartPreset::DsHalf | ChartPreset::DsFlrwKm1 | ChartPreset::DsFlrwK0 | ChartPreset::DsFlrwKp1 => 1.0,
            ChartPreset::Ads | ChartPreset::AdsFlrwKm1 => -1.0,
        }
    }

    /// FLRW form `(k, a)` of the FLRW-type presets.
    pub fn flrw_form(self) -> Option<(Curvature, Preset)> {
        match self {
            ChartPreset::DsFlrwKm1 => Some((Curvature::Negative, Preset::DsKm1)),
            ChartPreset::DsFlrwK0 => Some((Curvature::Flat, Preset::DsK0)),
            ChartPreset::DsFlrwKp1 => Some((Curvature::Positive, Preset::DsKp1)),
            ChartPreset::MinkFlrwKm1 => Some((Curvature::Negative, Preset::MinkKm1)),
            ChartPreset::AdsFlrwKm1 => Some((Curvature::Negative, Preset::AdsKm1)),
            _ => None,
        }
    }
}

/// A chart preset bound to a spacetime dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PresetChart {
    pub preset: ChartPreset,
    pub n: usize,
}

/// Parametrization map of a named chart.
pub fn chart_preset(name: &str, n: usize) -> Result<PresetChart> {
    let preset = ChartPreset::from_name(name).ok_or_else(|| Error::Invalid(format!("unknown chart preset `{name}`")))?;
    Ok(PresetChart { preset, n })
}

impl PresetChart {
    pub fn new(preset: ChartPreset, n: usize) -> Self {
        PresetChart { preset, n }
    }

    fn embed<S: Real>(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.n {
            return Err(Error::Invalid(format!("expected {} chart coordinates, got {}", self.n, x.len())));
        }
        let mink_sq = |x: &[S]| x.iter().skip(1).fold(x[0].sq(), |acc, v| acc - v.sq());
        let flat = |x: &[S], yn: S, yn1: S| {
            let mut y: Vec<S> = x.to_vec();
            y.push(yn);
            y.push(yn1);
            y
        };
        Ok(match self.preset {
            ChartPreset::MinkGlobal => {
                let s = mink_sq(x);
                flat(x, (s.clone() + 1.0) * 0.5, (-s + 1.0) * 0.5)
            }
            ChartPreset::DsHalf => {
                let s = mink_sq(x) + 1.0;
                if s.value() <= 0.0 {
                    return Err(Error::Domain("ds_half needs xi.xi > -1".into()));
                }
                flat(x, s.sqrt(), S::cst(1.0))
            }
            ChartPreset::Ads => {
                let s = -mink_sq(x) + 1.0;
                if s.value() <= 0.0 {
                    return Err(Error::Domain("ads needs xi.xi < 1".into()));
                }
                flat(x, S::cst(1.0), s.sqrt())
            }
            ChartPreset::DsFlrwKm1 | ChartPreset::DsFlrwK0 | ChartPreset::DsFlrwKp1 | ChartPreset::AdsFlrwKm1 => {
                let (t, chi) = (&x[0], &x[1]);
                let w = super::sphere(&x[2..]);
                let (y0, radial, yn, yn1) = match self.preset {
                    ChartPreset::DsFlrwKm1 => {
                        let cs = t.sinh().recip();
                        (cs.clone() * chi.cosh(), cs * chi.sinh(), t.cosh() / t.sinh(), S::cst(1.0))
                    }
                    ChartPreset::DsFlrwK0 => {
                        if t.value() == 0.0 {
                            return Err(Error::Domain("ds_flrw_k0 needs t != 0".into()));
                        }
                        let it = t.recip();
                        let c2 = chi.sq() * it.clone();
                        (
                            (-t.clone() + it.clone() + c2.clone()) * 0.5,
                            chi.clone() * it.clone(),
                            (t.clone() + it - c2) * 0.5,
                            S::cst(1.0),
                        )
                    }
                    ChartPreset::DsFlrwKp1 => {
                        let cs = t.sin().recip();
                        (t.cos() * cs.clone(), cs.clone() * chi.sin(), cs * chi.cos(), S::cst(1.0))
                    }
                    _ => {
                        let sh = t.cosh().recip();
                        (sh.clone() * chi.cosh(), sh * chi.sinh(), S::cst(1.0), t.tanh())
                    }
                };
                let mut y = vec![y0];
                y.extend(w.into_iter().map(|wi| radial.clone() * wi));
                y.push(yn);
                y.push(yn1);
                y
            }
            ChartPreset::MinkFlrwKm1 => {
                let (t, chi) = (&x[0], &x[1]);
                let e = (-t.clone()).exp();
                let w = super::sphere(&x[2..]);
                let mut xi = vec![e.clone() * chi.cosh()];
                xi.extend(w.into_iter().map(|wi| e.clone() * chi.sinh() * wi));
                let s = e.sq();
                flat(&xi, (s.clone() + 1.0) * 0.5, (-s + 1.0) * 0.5)
            }
        })
    }
}

impl ChartMap for PresetChart {
    fn chart_dim(&self) -> usize {
        self.n
    }
    fn map_hd(&self, x: &[HyperDual]) -> Result<Vec<HyperDual>> {
        let y = self.embed(x)?;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("{} is singular here", self.preset.name())));
        }
        Ok(y)
    }
    fn map(&self, x: &[f64]) -> Result<Vec<f64>> {
        let y = self.embed(x)?;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("{} is singular here", self.preset.name())));
        }
        Ok(y)
    }
    fn defining_function(&self) -> DefiningFunction {
        DefiningFunction::adsm(self.preset.kappa(), self.n)
    }
    fn closed_form_metric(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        let n = self.n;
        let eta0 = |i: usize| if i == 0 { 1.0 } else { -1.0 };
        let flat_part = |x: &[f64], sign: f64, denom: f64| {
            let xl: Vec<f64> = (0..n).map(|i| eta0(i) * x[i]).collect();
            DMatrix::from_fn(n, n, |i, j| {
                (if i == j { eta0(i) } else { 0.0 }) + sign * xl[i] * xl[j] / denom
            })
        };
        let s: f64 = (0..n).map(|i| eta0(i) * x[i] * x[i]).sum();
        match self.preset {
            ChartPreset::MinkGlobal => Ok(flat_part(x, 0.0, 1.0)),
            ChartPreset::DsHalf => Ok(flat_part(x, -1.0, 1.0 + s)),
            ChartPreset::Ads => Ok(flat_part(x, 1.0, 1.0 - s)),
            p => {
                let (k, a) = p.flrw_form().expect("FLRW-type preset");
                Flrw::new(k, a.expr(), n)?.closed_form_metric(x)
            }
        }
    }
}
