//! Two-point functions of the conformally coupled scalar and of Maxwell's field on FLRW
//! sections in four dimensions.
//!
//! Points are given in the isotropic chart `(t, r^1, r^2, r^3)`, which for `k = 0` is the
//! cartesian chart `xi` of Minkowski space. Bitensors are returned in that coordinate basis.
//! No `i epsilon` prescription is applied: kernels are evaluated away from `y.y' = 0`.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::embedding::{chart_jet, eta_diag, eta_dot, ChartMap, Curvature, Flrw, FlrwChart};
use crate::error::{Error, Result};
use crate::numeric::gradient;

const PI2: f64 = PI * PI;

/// Minkowski metric in the chart `xi`.
const MINK: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Separations below this multiple of `a(t) a(t')` are flagged singular.
pub const SINGULAR_THRESHOLD: f64 = 1e-9;

/// Guard radius in `|y.y'|` for finite-difference curls.
pub const DD_GUARD: f64 = 1e-3;

/// Two chart points on the same section and their ambient product.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSeparation {
    pub x: Vec<f64>,
    pub xp: Vec<f64>,
    /// `y.y'` from the embedded points.
    pub ydot: f64,
    /// `y.y'` from the closed form in `(t, r)`.
    pub closed_form: f64,
    pub singular: bool,
}

impl PairSeparation {
    pub fn nonsingular(&self) -> Result<f64> {
        if self.singular {
            Err(Error::Singular { ydot: self.ydot })
        } else {
            Ok(self.ydot)
        }
    }
}

fn section(flrw: &Flrw) -> FlrwChart {
    FlrwChart::cartesian(flrw.clone())
}

fn require_n4(flrw: &Flrw) -> Result<()> {
    if flrw.n != 4 {
        return Err(Error::Invalid(format!("two-point functions are four-dimensional, got n = {}", flrw.n)));
    }
    Ok(())
}

/// `q = 1 - k r^2`, the radial factor of the Einstein-space chart.
fn radial_q(k: Curvature, r: &[f64]) -> Result<f64> {
    let q = 1.0 - k.value() * r.iter().map(|v| v * v).sum::<f64>();
    if q <= 0.0 {
        return Err(Error::Domain(format!("k = +1 chart needs r < 1, got r^2 = {}", 1.0 - q)));
    }
    Ok(q)
}

/// `y_E.y'_E` on the Einstein space (Minkowski for `k = 0`) of type `k`.
pub fn einstein_dot(k: Curvature, x: &[f64], xp: &[f64]) -> Result<f64> {
    let (r, rp) = (&x[1..], &xp[1..]);
    let dt = x[0] - xp[0];
    let rr: f64 = r.iter().zip(rp).map(|(a, b)| a * b).sum();
    Ok(match k {
        Curvature::Flat => {
            let dr2: f64 = r.iter().zip(rp).map(|(a, b)| (a - b) * (a - b)).sum();
            -0.5 * (dt * dt - dr2)
        }
        Curvature::Negative => (radial_q(k, r)? * radial_q(k, rp)?).sqrt() - rr - dt.cosh(),
        Curvature::Positive => dt.cos() - (radial_q(k, r)? * radial_q(k, rp)?).sqrt() - rr,
    })
}

/// `y.y'` for two points of the section, by both routes; the two must agree to `1e-10`.
pub fn ambient_dot(flrw: &Flrw, x: &[f64], xp: &[f64]) -> Result<PairSeparation> {
    let chart = section(flrw);
    let (y, yp) = (chart.map(x)?, chart.map(xp)?);
    let ydot = eta_dot(&y, &yp);
    let (a, ap) = (flrw.a.eval_positive(&x[0])?, flrw.a.eval_positive(&xp[0])?);
    let closed_form = a * ap * einstein_dot(flrw.k, x, xp)?;
    let scale: f64 = y.iter().zip(&yp).map(|(u, v)| (u * v).abs()).sum::<f64>().max(1.0);
    if (ydot - closed_form).abs() > 1e-10 * scale {
        return Err(Error::Constraint(format!("y.y' = {ydot:e} but closed form gives {closed_form:e}")));
    }
    Ok(PairSeparation {
        x: x.to_vec(),
        xp: xp.to_vec(),
        ydot,
        closed_form,
        singular: ydot.abs() < SINGULAR_THRESHOLD * a * ap,
    })
}

/// `<phi phi'> = 1 / (8 pi^2 y.y')`.
pub fn scalar_two_point(flrw: &Flrw, x: &[f64], xp: &[f64]) -> Result<f64> {
    let ydot = ambient_dot(flrw, x, xp)?.nonsingular()?;
    Ok(1.0 / (8.0 * PI2 * ydot))
}

/// `<alpha_mu alpha_nu'> = -(1 / 8 pi^2) (J^T eta J')_{mu nu'} / y.y'`.
pub fn photon_potential_ambient(flrw: &Flrw, x: &[f64], xp: &[f64]) -> Result<DMatrix<f64>> {
    require_n4(flrw)?;
    let ydot = ambient_dot(flrw, x, xp)?.nonsingular()?;
    let chart = section(flrw);
    let (j, jp) = (chart_jet(&chart, x)?.jac, chart_jet(&chart, xp)?.jac);
    let eta = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(eta_diag(6)));
    Ok(j.transpose() * eta * jp * (-1.0 / (8.0 * PI2 * ydot)))
}

fn singular_check(v: f64) -> Result<f64> {
    if v.abs() < SINGULAR_THRESHOLD {
        Err(Error::Singular { ydot: v })
    } else {
        Ok(v)
    }
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// Closed-form potential two-point function of the Einstein space of type `k`.
pub fn photon_potential_einstein(k: Curvature, x: &[f64], xp: &[f64]) -> Result<DMatrix<f64>> {
    let yy = singular_check(einstein_dot(k, x, xp)?)?;
    let (r, rp) = (&x[1..], &xp[1..]);
    let dt = x[0] - xp[0];
    if k == Curvature::Flat {
        let dxi2 = -2.0 * yy;
        return Ok(DMatrix::from_fn(4, 4, |m, n| delta(m, n) * MINK[m] / (4.0 * PI2 * dxi2)));
    }
    let kv = k.value();
    let root = (radial_q(k, r)? * radial_q(k, rp)?).sqrt();
    let time = if k == Curvature::Negative { dt.cosh() } else { dt.cos() };
    Ok(DMatrix::from_fn(4, 4, |m, n| {
        let bracket = match (m, n) {
            (0, 0) => time,
            (0, _) | (_, 0) => 0.0,
            (i, j) => -delta(i, j) - kv * r[i - 1] * rp[j - 1] / root,
        };
        -bracket / (8.0 * PI2 * yy)
    }))
}

/// The pure-gauge difference between the potential on the FLRW section and on its Einstein space.
pub fn pure_gauge_term(flrw: &Flrw, x: &[f64], xp: &[f64]) -> Result<DMatrix<f64>> {
    require_n4(flrw)?;
    let (psi, psip) = (flrw.a.psi_dot(x[0])?, flrw.a.psi_dot(xp[0])?);
    let yy = singular_check(einstein_dot(flrw.k, x, xp)?)?;
    let (r, rp) = (&x[1..], &xp[1..]);
    let dt = x[0] - xp[0];
    // at_x: covector at x paired with dpsi(t'); at_xp: covector at x' paired with dpsi(t)
    let (at_x, at_xp): (Vec<f64>, Vec<f64>) = match flrw.k {
        Curvature::Flat => {
            let dxi2 = -2.0 * yy;
            let low: Vec<f64> = (0..4).map(|m| MINK[m] * (x[m] - xp[m])).collect();
            (low.iter().map(|v| 2.0 * v / dxi2).collect(), low.iter().map(|v| -2.0 * v / dxi2).collect())
        }
        k => {
            let (q, qp) = (radial_q(k, r)?, radial_q(k, rp)?);
            let s = if k == Curvature::Negative { dt.sinh() } else { dt.sin() };
            let mut ax = vec![-s / yy];
            let mut axp = vec![s / yy];
            for i in 0..3 {
                ax.push(-(rp[i] - r[i] * (qp / q).sqrt()) / yy);
                axp.push(-(r[i] - rp[i] * (q / qp).sqrt()) / yy);
            }
            (ax, axp)
        }
    };
    let mut m = DMatrix::zeros(4, 4);
    m[(0, 0)] = psi * psip;
    for i in 0..4 {
        m[(0, i)] += psi * at_xp[i];
        m[(i, 0)] += at_x[i] * psip;
    }
    Ok(m * (-1.0 / (8.0 * PI2)))
}

/// Index pairs `mu < nu` labelling 2-form components.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(a: usize, b: usize) -> Option<(usize, f64)> {
    if a == b {
        return None;
    }
    let (lo, hi, s) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    PAIRS.iter().position(|&p| p == (lo, hi)).map(|i| (i, s))
}

/// `<F_{mu nu}(x) F_{rho' sigma'}(x')>` stored over `PAIRS x PAIRS`, with `F = d alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiTensor2 {
    pub c: DMatrix<f64>,
}

impl BiTensor2 {
    pub fn from_fn(f: impl Fn(usize, usize, usize, usize) -> f64) -> BiTensor2 {
        BiTensor2 { c: DMatrix::from_fn(6, 6, |p, q| f(PAIRS[p].0, PAIRS[p].1, PAIRS[q].0, PAIRS[q].1)) }
    }

    /// Component for arbitrary index order, zero on repeated indices.
    pub fn get(&self, mu: usize, nu: usize, rho: usize, sigma: usize) -> f64 {
        match (pair_index(mu, nu), pair_index(rho, sigma)) {
            (Some((p, s1)), Some((q, s2))) => s1 * s2 * self.c[(p, q)],
            _ => 0.0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.amax()
    }

    pub fn max_diff(&self, o: &BiTensor2) -> f64 {
        (&self.c - &o.c).amax()
    }
}

fn antisymmetrize(t: impl Fn(usize, usize, usize, usize) -> f64) -> BiTensor2 {
    BiTensor2::from_fn(|m, n, r, s| t(m, n, r, s) - t(n, m, r, s) - t(m, n, s, r) + t(n, m, s, r))
}

/// Pullback of the ambient kernel
/// `(1/8 pi^2) [eta eta / (y.y')^2 - 2 eta y' y / (y.y')^3] dy ^ dy (x) dy' ^ dy'`.
pub fn field_strength_ambient(flrw: &Flrw, x: &[f64], xp: &[f64]) -> Result<BiTensor2> {
    require_n4(flrw)?;
    let ydot = ambient_dot(flrw, x, xp)?.nonsingular()?;
    let chart = section(flrw);
    let (jx, jxp) = (chart_jet(&chart, x)?, chart_jet(&chart, xp)?);
    let eta = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(eta_diag(6)));
    let p = jx.jac.transpose() * &eta * &jxp.jac;
    let low = |v: &[f64]| -> Vec<f64> { v.iter().zip(eta_diag(6)).map(|(a, s)| a * s).collect() };
    // y'_gamma dy^gamma pulled back at x, y_delta dy'^delta at x'
    let u: Vec<f64> = (0..4).map(|m| (0..6).map(|g| low(&jxp.y)[g] * jx.jac[(g, m)]).sum()).collect();
    let v: Vec<f64> = (0..4).map(|m| (0..6).map(|g| low(&jx.y)[g] * jxp.jac[(g, m)]).sum()).collect();
    let (y2, y3) = (ydot * ydot, ydot * ydot * ydot);
    Ok(antisymmetrize(|a, g, b, d| (p[(a, b)] * p[(g, d)] / y2 - 2.0 * p[(a, b)] * u[g] * v[d] / y3) / (8.0 * PI2)))
}

/// Closed-form field-strength components on the Einstein space of type `k`.
pub fn field_strength_two_point(k: Curvature, x: &[f64], xp: &[f64]) -> Result<BiTensor2> {
    let yy = singular_check(einstein_dot(k, x, xp)?)?;
    match k {
        Curvature::Flat => {
            let dxi2 = -2.0 * yy;
            let low: Vec<f64> = (0..4).map(|m| MINK[m] * (x[m] - xp[m])).collect();
            let e = |a: usize, b: usize| delta(a, b) * MINK[a];
            let (d4, d6) = (dxi2 * dxi2, dxi2 * dxi2 * dxi2);
            Ok(antisymmetrize(|m, n, r, s| {
                e(m, r) * e(n, s) / (2.0 * PI2 * d4) - 2.0 * low[m] * low[r] * e(n, s) / (PI2 * d6)
            }))
        }
        _ => {
            let ff = curved_components(k, x, xp, yy)?;
            let swapped = curved_components(k, xp, x, yy)?;
            Ok(BiTensor2::from_fn(|m, n, r, s| match (m, r) {
                (0, 0) => ff.f0i0m(n - 1, s - 1),
                (0, _) => ff.f0imn(n - 1, r - 1, s - 1),
                (_, 0) => swapped.f0imn(s - 1, m - 1, n - 1),
                _ => ff.fijmn(m - 1, n - 1, r - 1, s - 1),
            }))
        }
    }
}

/// Component formulas for `k = +-1` in `(t, r)` with `D_im`, `G_im`, normalized so that
/// `F_{mu nu} = d_mu alpha_nu - d_nu alpha_mu` for every block.
struct CurvedComponents {
    k: f64,
    r: Vec<f64>,
    rp: Vec<f64>,
    root: f64,
    ratio: f64,
    time_even: f64,
    time_odd: f64,
    yy: f64,
}

impl CurvedComponents {
    fn d(&self, i: usize, m: usize) -> f64 {
        delta(i, m) + self.k * self.r[i] * self.rp[m] / self.root
    }

    fn g(&self, i: usize, m: usize) -> f64 {
        let (r, rp) = (&self.r, &self.rp);
        r[i] * rp[m] + rp[i] * r[m] - self.ratio * r[i] * r[m] - rp[i] * rp[m] / self.ratio
    }

    fn f0i0m(&self, i: usize, m: usize) -> f64 {
        let (y2, y3) = (self.yy * self.yy, self.yy.powi(3));
        (-self.time_even * self.d(i, m) / y2
            - (self.time_even * self.g(i, m) + self.time_odd * self.time_odd * self.d(i, m)) / y3)
            / (4.0 * PI2)
    }

    fn f0imn(&self, i: usize, m: usize, n: usize) -> f64 {
        let (r, rp) = (&self.r, &self.rp);
        let body = r[m] * self.d(i, n) - r[n] * self.d(i, m)
            - (rp[m] * delta(i, n) - rp[n] * delta(i, m)) / self.ratio;
        self.time_odd / self.yy.powi(3) * body / (4.0 * PI2)
    }

    fn fijmn(&self, i: usize, j: usize, m: usize, n: usize) -> f64 {
        let (r, rp) = (&self.r, &self.rp);
        let (y2, y3) = (self.yy * self.yy, self.yy.powi(3));
        let alt = |h: &dyn Fn(usize, usize) -> f64| {
            h(i, m) * delta(j, n) - h(j, m) * delta(i, n) - h(i, n) * delta(j, m) + h(j, n) * delta(i, m)
        };
        let quartic = (rp[i] * r[j] * r[m] * rp[n] - rp[j] * r[i] * r[m] * rp[n] - rp[i] * r[j] * r[n] * rp[m]
            + rp[j] * r[i] * r[n] * rp[m])
            / self.root;
        let dd = delta(i, m) * delta(j, n) - delta(j, m) * delta(i, n);
        let first = alt(&|a, b| self.d(a, b)) - dd;
        (first / y2 + (self.k * quartic + alt(&|a, b| self.g(a, b))) / y3) / (4.0 * PI2)
    }
}

fn curved_components(k: Curvature, x: &[f64], xp: &[f64], yy: f64) -> Result<CurvedComponents> {
    let (r, rp) = (x[1..].to_vec(), xp[1..].to_vec());
    let (q, qp) = (radial_q(k, &r)?, radial_q(k, &rp)?);
    let dt = x[0] - xp[0];
    let (time_even, time_odd) = match k {
        Curvature::Negative => (dt.cosh(), dt.sinh()),
        _ => (dt.cos(), dt.sin()),
    };
    Ok(CurvedComponents { k: k.value(), r, rp, root: (q * qp).sqrt(), ratio: (qp / q).sqrt(), time_even, time_odd, yy })
}

/// `d d'` of a potential bitensor by nested Richardson-extrapolated central differences.
pub fn curl_curl<M>(m: M, x: &[f64], xp: &[f64]) -> Result<BiTensor2>
where
    M: Fn(&[f64], &[f64]) -> Result<DMatrix<f64>>,
{
    let inner = |q: &[f64]| -> Result<Vec<f64>> {
        let g = gradient(|p: &[f64]| Ok(m(q, p)?.as_slice().to_vec()), xp)?;
        Ok(g.into_iter().flatten().collect())
    };
    let outer = gradient(inner, x)?;
    // outer[mu][rho * 16 + nu + 4 sigma] = d_mu d'_rho M_{nu sigma'}
    let dm = |mu: usize, nu: usize, rho: usize, sigma: usize| outer[mu][rho * 16 + nu + 4 * sigma];
    Ok(antisymmetrize(dm))
}

/// `<F F'> = d d' <alpha alpha'>` from the ambient potential.
pub fn field_strength_via_dd(flrw: &Flrw, x: &[f64], xp: &[f64]) -> Result<BiTensor2> {
    require_n4(flrw)?;
    let sep = ambient_dot(flrw, x, xp)?;
    let (a, ap) = (flrw.a.eval_positive(&x[0])?, flrw.a.eval_positive(&xp[0])?);
    if sep.ydot.abs() < DD_GUARD * a * ap {
        return Err(Error::Singular { ydot: sep.ydot });
    }
    curl_curl(|p, q| photon_potential_ambient(flrw, p, q), x, xp)
}
