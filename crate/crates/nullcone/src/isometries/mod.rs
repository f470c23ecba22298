//! Isometries of a section `X_f` as the generators `J` of `o(2, n)` with `J(f) = 0`.
//!
//! A generator is an antisymmetric matrix `J^{ab}` acting as the vector field
//! `J^{ab} y_a d_b`. The isometry algebra is the null space of the linear map
//! `J -> (J(f)(y_s))_s` over sample points `y_s` of the section.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{eta_diag, ChartMap, Curvature, DefiningFunction, Flrw, FlrwChart};
use crate::error::{Error, Result};
use crate::numeric::null_space;
use crate::scalefactor::ScaleExpr;

/// Default number of sample points.
pub const DEFAULT_SAMPLES: usize = 40;

/// Default relative rank tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Element of `o(2, n)` stored by its parameters `J^{ab}`, `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalGenerator {
    dim: usize,
    params: Vec<f64>,
}

fn pairs(dim: usize) -> Vec<(usize, usize)> {
    (0..dim).flat_map(|a| (a + 1..dim).map(move |b| (a, b))).collect()
}

impl ConformalGenerator {
    pub fn from_params(dim: usize, params: Vec<f64>) -> Result<Self> {
        if params.len() != dim * (dim - 1) / 2 {
            return Err(Error::Invalid(format!("o(2,{}) has {} parameters, got {}", dim - 2, dim * (dim - 1) / 2, params.len())));
        }
        Ok(ConformalGenerator { dim, params })
    }

    /// Upper-triangular part of an antisymmetric matrix.
    pub fn from_matrix(j: &DMatrix<f64>) -> Self {
        let dim = j.nrows();
        ConformalGenerator { dim, params: pairs(dim).iter().map(|&(a, b)| 0.5 * (j[(a, b)] - j[(b, a)])).collect() }
    }

    /// `y_a d_b - y_b d_a`.
    pub fn plane(dim: usize, a: usize, b: usize) -> Self {
        let mut j = DMatrix::zeros(dim, dim);
        j[(a, b)] = 1.0;
        j[(b, a)] = -1.0;
        Self::from_matrix(&j)
    }

    /// `P_mu = 1/2 [y_mu (d_n - d_{n+1}) - (y_n - y_{n+1}) d_mu]`.
    pub fn translation(dim: usize, mu: usize) -> Self {
        let (n, n1) = (dim - 2, dim - 1);
        let mut j = DMatrix::zeros(dim, dim);
        j[(mu, n)] = 0.5;
        j[(n, mu)] = -0.5;
        j[(mu, n1)] = -0.5;
        j[(n1, mu)] = 0.5;
        Self::from_matrix(&j)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(self.dim, self.dim);
        for (&(a, b), v) in pairs(self.dim).iter().zip(&self.params) {
            j[(a, b)] = *v;
            j[(b, a)] = -v;
        }
        j
    }

    /// `A` with `J^{ab} y_a d_b = (A y)^b d_b`, that is `A = -J eta`.
    pub fn linear_field(&self) -> DMatrix<f64> {
        let eta = DMatrix::from_diagonal(&DVector::from_vec(eta_diag(self.dim)));
        -self.matrix() * eta
    }

    /// Generator of the linear field `A y`, the inverse of [`Self::linear_field`].
    pub fn from_linear_field(a: &DMatrix<f64>) -> Self {
        let eta = DMatrix::from_diagonal(&DVector::from_vec(eta_diag(a.nrows())));
        Self::from_matrix(&(-(a * eta)))
    }

    /// Flow `exp(s A)` by scaling and squaring of a Taylor series.
    pub fn flow(&self, s: f64) -> DMatrix<f64> {
        let a = self.linear_field() * s;
        let norm = a.amax() * self.dim as f64;
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
        let b = a / 2f64.powi(squarings as i32);
        let mut term = DMatrix::identity(self.dim, self.dim);
        let mut sum = term.clone();
        for k in 1..20 {
            term = &term * &b / k as f64;
            sum += &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    /// Lie bracket of the vector fields, `[A y, B y] = (B A - A B) y`.
    pub fn bracket(&self, o: &ConformalGenerator) -> ConformalGenerator {
        let (a, b) = (self.linear_field(), o.linear_field());
        Self::from_linear_field(&(&b * &a - &a * &b))
    }

    pub fn norm(&self) -> f64 {
        self.params.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        ConformalGenerator { dim: self.dim, params: self.params.iter().map(|v| v / n).collect() }
    }
}

/// `J(f)(y) = J^{ab} y_a (d_b f)(y)`.
pub fn generator_action(j: &ConformalGenerator, f: &DefiningFunction, y: &[f64]) -> Result<f64> {
    let grad = f.evaluate(y)?.grad;
    Ok(action_with_gradient(j, y, &grad))
}

fn action_with_gradient(j: &ConformalGenerator, y: &[f64], grad: &[f64]) -> f64 {
    let eta = eta_diag(y.len());
    pairs(j.dim)
        .iter()
        .zip(&j.params)
        .map(|(&(a, b), v)| v * (eta[a] * y[a] * grad[b] - eta[b] * y[b] * grad[a]))
        .sum()
}

/// Null space of `J -> J(f)` over the sample points.
#[derive(Clone, Debug)]
pub struct IsometryAlgebra {
    pub dimension: usize,
    pub basis: Vec<ConformalGenerator>,
    pub singular_values: Vec<f64>,
    /// Ratio between the smallest retained and the largest discarded singular value.
    pub gap: f64,
    /// Set when a singular value lies within a factor ten of the tolerance.
    pub ill_conditioned: bool,
}

/// Isometry algebra of `f` from explicit sample points of its section.
pub fn isometry_algebra_from_points(f: &DefiningFunction, points: &[Vec<f64>], tol: f64) -> Result<IsometryAlgebra> {
    let dim = f.dim();
    let params = dim * (dim - 1) / 2;
    if points.len() < params {
        return Err(Error::Invalid(format!("need at least {params} sample points, got {}", points.len())));
    }
    let mut rows = DMatrix::zeros(points.len(), params);
    for (s, y) in points.iter().enumerate() {
        let grad = f.evaluate(y)?.grad;
        let eta = eta_diag(dim);
        let row: Vec<f64> = pairs(dim).iter().map(|&(a, b)| eta[a] * y[a] * grad[b] - eta[b] * y[b] * grad[a]).collect();
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
        for (p, v) in row.iter().enumerate() {
            rows[(s, p)] = v / norm;
        }
    }
    let ns = null_space(&rows, tol);
    let basis = ns.basis.iter().map(|v| ConformalGenerator { dim, params: v.iter().copied().collect() }).collect();
    let gap = ns.gap();
    let ill_conditioned = ns.singular_values.iter().any(|&s| s > 0.1 * tol && s < 10.0 * tol);
    Ok(IsometryAlgebra {
        dimension: ns.basis.len(),
        basis,
        singular_values: ns.singular_values.clone(),
        gap,
        ill_conditioned,
    })
}

/// Random points of an FLRW section in the spherical chart with `t` drawn from `t_range`,
/// avoiding `|t| < 0.1` and the coordinate singularities.
pub fn sample_section(flrw: &Flrw, t_range: (f64, f64), count: usize, rng: &mut impl Rng) -> Result<Vec<Vec<f64>>> {
    let (lo, hi) = t_range;
    if !(lo < hi) {
        return Err(Error::Invalid(format!("empty time range {lo}..{hi}")));
    }
    if lo > -0.1 && hi < 0.1 {
        return Err(Error::Invalid("time range lies inside |t| < 0.1".into()));
    }
    let chart = FlrwChart::spherical(flrw.clone());
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 100 * count {
            return Err(Error::Domain(format!("could not draw {count} points with t in {lo}..{hi}")));
        }
        let t = rng.gen_range(lo..hi);
        if t.abs() < 0.1 {
            continue;
        }
        let mut x = vec![t, rng.gen_range(0.2..1.2)];
        for k in 0..flrw.n - 2 {
            x.push(if k + 3 == flrw.n { rng.gen_range(0.0..std::f64::consts::TAU) } else { rng.gen_range(0.3..2.8) });
        }
        if let Ok(y) = chart.map(&x) {
            out.push(y);
        }
    }
    Ok(out)
}

/// Isometry algebra of an FLRW section from `samples` random points.
pub fn isometry_algebra(flrw: &Flrw, t_range: (f64, f64), samples: usize, tol: f64, seed: u64) -> Result<IsometryAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_section(flrw, t_range, samples, &mut rng)?;
    isometry_algebra_from_points(&flrw.defining_function(), &points, tol)
}

/// Dimension of the isometry algebra, required to agree over `seeds` independent draws.
pub fn isometry_algebra_dimension(flrw: &Flrw, t_range: (f64, f64), samples: usize, tol: f64, seeds: &[u64]) -> Result<usize> {
    let mut dims = Vec::with_capacity(seeds.len());
    for &s in seeds {
        dims.push(isometry_algebra(flrw, t_range, samples, tol, s)?.dimension);
    }
    match dims.first() {
        Some(&d) if dims.iter().all(|&e| e == d) => Ok(d),
        Some(_) => Err(Error::Inconclusive(format!("dimension varies across draws: {dims:?}"))),
        None => Err(Error::Invalid("no seeds given".into())),
    }
}

/// Largest residual of the projection of `g` onto the span of `basis`, relative to `|g|`.
pub fn span_residual(basis: &[ConformalGenerator], g: &ConformalGenerator) -> f64 {
    if basis.is_empty() {
        return 1.0;
    }
    let m = DMatrix::from_columns(&basis.iter().map(|b| DVector::from_column_slice(b.params())).collect::<Vec<_>>());
    let v = DVector::from_column_slice(g.params());
    let coeffs = m.clone().svd(true, true).solve(&v, 1e-14).unwrap_or_else(|_| DVector::zeros(basis.len()));
    (&m * coeffs - &v).amax() / g.params().iter().fold(0.0f64, |a, b| a.max(b.abs())).max(1e-300)
}

/// Largest [`span_residual`] of the brackets of all basis pairs.
pub fn closure_defect(basis: &[ConformalGenerator]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let c = a.bracket(b);
            if c.norm() > 1e-12 {
                worst = worst.max(span_residual(basis, &c));
            }
        }
    }
    worst
}

/// Special sections with enhanced symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    Generic,
    Einstein,
    DeSitter,
    AntiDeSitter,
    Minkowski,
}

impl SpecialCase {
    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::Generic => "generic",
            SpecialCase::Einstein => "einstein",
            SpecialCase::DeSitter => "de_sitter",
            SpecialCase::AntiDeSitter => "anti_de_sitter",
            SpecialCase::Minkowski => "minkowski",
        }
    }
}

/// Outcome of [`classify_special`].
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub dimension: usize,
    pub case: SpecialCase,
    /// The scale-factor equation that holds on the scan domain.
    pub ode: Option<&'static str>,
    /// Conformal-time offset `t0` when the equation carries one.
    pub offset: Option<f64>,
}

struct OdeFit {
    case: SpecialCase,
    ode: &'static str,
    offset: Option<f64>,
}

fn psi_samples(a: &ScaleExpr, (lo, hi): (f64, f64)) -> Result<Vec<(f64, f64)>> {
    (0..24)
        .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / 24.0)
        .filter(|t| t.abs() >= 0.1)
        .map(|t| Ok((t, a.psi_dot(t)?)))
        .collect()
}

/// Common value of `g(t, psi)` over the samples, if the spread is below `1e-6`.
fn constant_over(samples: &[(f64, f64)], g: impl Fn(f64, f64) -> Option<f64>) -> Option<f64> {
    let vals: Option<Vec<f64>> = samples.iter().map(|&(t, p)| g(t, p)).collect();
    let vals = vals?;
    let (lo, hi) = vals.iter().fold((f64::MAX, f64::MIN), |(l, h), v| (l.min(*v), h.max(*v)));
    if vals.is_empty() || hi - lo > 1e-6 * hi.abs().max(1.0) {
        None
    } else {
        Some(0.5 * (lo + hi))
    }
}

fn near(v: f64, target: f64) -> bool {
    (v - target).abs() < 1e-6
}

/// The scale-factor equations with enhanced symmetry, fitted on the scan samples.
fn match_ode(k: Curvature, samples: &[(f64, f64)]) -> Option<OdeFit> {
    let fit = |case, ode, offset| Some(OdeFit { case, ode, offset });
    if samples.iter().all(|&(_, p)| p.abs() < 1e-9) {
        return match k {
            Curvature::Flat => fit(SpecialCase::Minkowski, "a' = 0", None),
            _ => fit(SpecialCase::Einstein, "a' = 0", None),
        };
    }
    let nonzero = |p: f64| if p.abs() > 1e-12 { Some(p) } else { None };
    match k {
        Curvature::Flat => {
            // (t - t0) a' + a = 0
            let t0 = constant_over(samples, |t, p| nonzero(p).map(|p| t + 1.0 / p))?;
            fit(SpecialCase::DeSitter, "(t - t0) a' + a = 0", Some(t0))
        }
        Curvature::Negative => {
            if let Some(s) = constant_over(samples, |_, p| Some(p)) {
                if near(s.abs(), 1.0) {
                    return fit(SpecialCase::Minkowski, "a' = +-a", None);
                }
            }
            // a' + a / tanh(t - t0) = 0
            let ds = constant_over(samples, |t, p| {
                let u = -1.0 / nonzero(p)?;
                (u.abs() < 1.0).then(|| t - u.atanh())
            });
            if let Some(t0) = ds {
                return fit(SpecialCase::DeSitter, "a' + a / tanh(t - t0) = 0", Some(t0));
            }
            // a' + tanh(t - t0) a = 0
            let ads = constant_over(samples, |t, p| (p.abs() < 1.0).then(|| t - (-p).atanh()))?;
            fit(SpecialCase::AntiDeSitter, "a' + tanh(t - t0) a = 0", Some(ads))
        }
        Curvature::Positive => {
            // a' + a / tan(t - t0) = 0, t0 reduced mod pi
            let pi = std::f64::consts::PI;
            let t0 = constant_over(samples, |t, p| {
                let t0 = t - (-1.0 / nonzero(p)?).atan();
                let t0 = t0.rem_euclid(pi);
                Some(if pi - t0 < 1e-6 { t0 - pi } else { t0 })
            })?;
            fit(SpecialCase::DeSitter, "a' + a / tan(t - t0) = 0", Some(t0))
        }
    }
}

/// Classifies an FLRW section by the dimension of its isometry algebra and checks the
/// scale-factor equation of the matching special case.
pub fn classify_special(flrw: &Flrw, scan: (f64, f64), seed: u64) -> Result<Classification> {
    let seeds: Vec<u64> = (0..3).map(|i| seed.wrapping_add(i)).collect();
    let dimension = isometry_algebra_dimension(flrw, scan, DEFAULT_SAMPLES, DEFAULT_TOL, &seeds)?;
    let n = flrw.n;
    let minimal = n * (n - 1) / 2;
    let samples = psi_samples(&flrw.a, scan)?;
    let fit = match_ode(flrw.k, &samples);
    let disagree = |why: String| Err(Error::Inconclusive(why));
    match (dimension, fit) {
        (d, None) if d == minimal => Ok(Classification { dimension: d, case: SpecialCase::Generic, ode: None, offset: None }),
        (d, Some(f)) => {
            let expected = match f.case {
                SpecialCase::Einstein => minimal + 1,
                SpecialCase::Generic => minimal,
                _ => minimal + n,
            };
            if d != expected {
                return disagree(format!("dimension {d} but the scale factor solves `{}`", f.ode));
            }
            let offset = f.offset.filter(|t0| t0.abs() > 1e-6);
            Ok(Classification { dimension: d, case: f.case, ode: Some(f.ode), offset })
        }
        (d, None) => disagree(format!("dimension {d} but no special scale-factor equation holds")),
    }
}

#[cfg(test)]
mod tests;
