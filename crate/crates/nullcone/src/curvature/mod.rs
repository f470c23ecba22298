//! Curvature of a section `X_f` from its defining function alone, checked against a
//! Levi-Civita computation on the chart.
//!
//! Conventions: `Rm(x, w, u, v) = g(x, R(u, v) w)`, `Ric = C_{1,3} Rm`. With the
//! signature `(+, -, ..., -)` de Sitter space of unit radius has scalar curvature
//! `-n(n-1)`, the opposite sign to the `(-, +, ..., +)` literature.

use nalgebra::DMatrix;

use crate::embedding::{chart_jet, induced_metric, ChartMap};
use crate::error::{Error, Result};
use crate::forms::{christoffel, grade_of, Form};
use crate::numeric::{gradient, Symmetry, Tensor4};

/// `(h o k)(x, w, u, v) = h(x,u) k(w,v) + h(w,v) k(x,u) - h(w,u) k(x,v) - h(x,v) k(w,u)`.
pub fn kulkarni_nomizu(h: &DMatrix<f64>, k: &DMatrix<f64>) -> Tensor4 {
    let n = h.nrows();
    Tensor4::from_fn(n, Symmetry::KulkarniNomizu, |x, w, u, v| {
        h[(x, u)] * k[(w, v)] + h[(w, v)] * k[(x, u)] - h[(w, u)] * k[(x, v)] - h[(x, v)] * k[(w, u)]
    })
}

/// Riemann tensor, Ricci tensor and scalar curvature in a chart basis.
#[derive(Clone, Debug)]
pub struct CurvatureSet {
    pub riemann: Tensor4,
    pub ricci: DMatrix<f64>,
    pub scalar: f64,
    pub metric: DMatrix<f64>,
}

impl CurvatureSet {
    fn from_riemann(riemann: Tensor4, metric: DMatrix<f64>) -> Result<CurvatureSet> {
        let ginv = inverse(&metric)?;
        let ricci = riemann.contract13(&ginv);
        let scalar = (&ginv * &ricci).trace();
        Ok(CurvatureSet { riemann, ricci, scalar, metric })
    }

    /// Norm of the Weyl part `Rm - g o P`, `P` the Schouten tensor, relative to `|Rm|`.
    pub fn weyl_defect(&self) -> f64 {
        let n = self.metric.nrows() as f64;
        let p = (&self.ricci - &self.metric * (self.scalar / (2.0 * (n - 1.0)))) / (n - 2.0);
        let weyl = self.riemann.sub(&kulkarni_nomizu(&self.metric, &p));
        weyl.norm() / self.riemann.norm().max(1e-300)
    }
}

fn inverse(g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    g.clone().try_inverse().ok_or_else(|| Error::DegenerateChart("singular induced metric".into()))
}

/// `N_f = m_f^*(grad^eta df)` by pulling back the ambient Hessian.
pub fn nf_form(chart: &dyn ChartMap, x: &[f64]) -> Result<DMatrix<f64>> {
    let jet = chart_jet(chart, x)?;
    let fv = chart.defining_function().evaluate(&jet.y)?;
    Ok(jet.jac.transpose() * &fv.hess * &jet.jac)
}

/// `N_f(d_mu, d_nu) = -<df, grad^eta_{d_mu} d_nu>`, the ambient derivative being the
/// second derivative of the embedding.
pub fn nf_form_connection(chart: &dyn ChartMap, x: &[f64]) -> Result<DMatrix<f64>> {
    let jet = chart_jet(chart, x)?;
    let fv = chart.defining_function().evaluate(&jet.y)?;
    let n = chart.chart_dim();
    Ok(DMatrix::from_fn(n, n, |m, nu| -(0..jet.y.len()).map(|a| fv.grad[a] * jet.second[a][(m, nu)]).sum::<f64>()))
}

/// Both sides of `Tr_g N_f = box f - 2 (grad df)(D, F) + F^2 (grad df)(D, D)`.
pub fn trace_identity(chart: &dyn ChartMap, x: &[f64]) -> Result<(f64, f64)> {
    let jet = chart_jet(chart, x)?;
    let fv = chart.defining_function().evaluate(&jet.y)?;
    let g = jet.metric();
    let nf = jet.jac.transpose() * &fv.hess * &jet.jac;
    let lhs = (inverse(&g)? * nf).trace();
    let d = nalgebra::DVector::from_column_slice(&jet.y);
    let f = nalgebra::DVector::from_vec(fv.f_vector());
    let rhs = fv.box_f - 2.0 * (d.transpose() * &fv.hess * &f)[0] + fv.f_sq * (d.transpose() * &fv.hess * &d)[0];
    Ok((lhs, rhs))
}

/// Curvature from `f`: `Rm = -1/2 g o (F^2 g - 2 N_f)`, `Ric = -(n-1) F^2 g + (n-2) N_f + (box f) g`,
/// `R = -n(n-1) F^2 + 2(n-1) box f`.
pub fn ambient_curvature(chart: &dyn ChartMap, x: &[f64]) -> Result<CurvatureSet> {
    let jet = chart_jet(chart, x)?;
    let fv = chart.defining_function().evaluate(&jet.y)?;
    let g = jet.metric();
    let nf = jet.jac.transpose() * &fv.hess * &jet.jac;
    let n = chart.chart_dim() as f64;
    let mut riemann = kulkarni_nomizu(&g, &(&g * fv.f_sq - &nf * 2.0)).scaled(-0.5);
    riemann.symmetry = Symmetry::Riemann;
    let ricci = &g * (-(n - 1.0) * fv.f_sq + fv.box_f) + &nf * (n - 2.0);
    let scalar = -n * (n - 1.0) * fv.f_sq + 2.0 * (n - 1.0) * fv.box_f;
    Ok(CurvatureSet { riemann, ricci, scalar, metric: g })
}

/// Levi-Civita curvature of the induced metric, by central differences along the chart.
pub fn intrinsic_curvature_oracle(chart: &dyn ChartMap, x: &[f64]) -> Result<CurvatureSet> {
    let n = chart.chart_dim();
    let g = induced_metric(chart, x)?;
    let gamma = christoffel(chart, x)?;
    let flat = |p: &[f64]| -> Result<Vec<f64>> {
        Ok(christoffel(chart, p)?.into_iter().flat_map(|m| m.as_slice().to_vec()).collect())
    };
    // dgamma[k][l * n * n + m + n * nu] = d_k Gamma^l_{m nu}
    let dgamma = gradient(flat, x)?;
    let dg = |k: usize, l: usize, m: usize, nu: usize| dgamma[k][l * n * n + m + n * nu];
    // R^r_{s m nu} = d_m G^r_{nu s} - d_nu G^r_{m s} + G^r_{m l} G^l_{nu s} - G^r_{nu l} G^l_{m s}
    let mut up = vec![0.0; n * n * n * n];
    for r in 0..n {
        for s in 0..n {
            for m in 0..n {
                for nu in 0..n {
                    let mut v = dg(m, r, nu, s) - dg(nu, r, m, s);
                    for l in 0..n {
                        v += gamma[r][(m, l)] * gamma[l][(nu, s)] - gamma[r][(nu, l)] * gamma[l][(m, s)];
                    }
                    up[((r * n + s) * n + m) * n + nu] = v;
                }
            }
        }
    }
    let riemann = Tensor4::from_fn(n, Symmetry::Riemann, |xx, w, u, v| {
        (0..n).map(|r| g[(xx, r)] * up[((r * n + w) * n + u) * n + v]).sum()
    });
    CurvatureSet::from_riemann(riemann, g)
}

/// Weitzenboeck operator `box_f - Delta_f` on `degree`-forms: `scalar Id + D(tensor)`,
/// with `D(T) = T_{bc} j^b i^c`.
#[derive(Clone, Debug)]
pub struct WeitzenboeckShift {
    pub degree: usize,
    pub scalar: f64,
    pub tensor: DMatrix<f64>,
    pub metric: DMatrix<f64>,
}

/// Degree-zero derivation `T_{bc} j^b i^c` on chart forms.
pub fn derivation(t: &DMatrix<f64>, metric: &DMatrix<f64>, a: &Form<f64>) -> Form<f64> {
    let n = t.nrows();
    let ginv = metric.clone().try_inverse().expect("nondegenerate metric");
    let mixed = t * ginv;
    let mut out = Form::zeros(n);
    for d in 0..n {
        let ia = a.interior(&unit(n, d));
        let row: Vec<f64> = (0..n).map(|b| mixed[(b, d)]).collect();
        out = out.add(&ia.ext(&row));
    }
    out
}

fn unit(n: usize, k: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[k] = 1.0;
    e
}

impl WeitzenboeckShift {
    pub fn apply(&self, a: &Form<f64>) -> Form<f64> {
        a.scale(self.scalar).add(&derivation(&self.tensor, &self.metric, a))
    }

    /// Matrix of the operator on the degree-`degree` blades of the chart.
    pub fn matrix(&self) -> DMatrix<f64> {
        operator_matrix(self.metric.nrows(), self.degree, |a| self.apply(a))
    }
}

fn operator_matrix(n: usize, degree: usize, op: impl Fn(&Form<f64>) -> Form<f64>) -> DMatrix<f64> {
    let blades: Vec<usize> = (0..1usize << n).filter(|&m| grade_of(m) == degree).collect();
    let mut m = DMatrix::zeros(blades.len(), blades.len());
    for (j, &b) in blades.iter().enumerate() {
        let img = op(&Form::blade(n, b));
        for (i, &c) in blades.iter().enumerate() {
            m[(i, j)] = *img.get(c);
        }
    }
    m
}

/// `[a(n-a) F^2 - a box f] Id + (2a - n) D(N_f)`.
pub fn weitzenboeck_shift(chart: &dyn ChartMap, degree: usize, x: &[f64]) -> Result<WeitzenboeckShift> {
    let n = chart.chart_dim();
    if degree > n {
        return Err(Error::Invalid(format!("form degree {degree} exceeds dimension {n}")));
    }
    let jet = chart_jet(chart, x)?;
    let fv = chart.defining_function().evaluate(&jet.y)?;
    let nf = jet.jac.transpose() * &fv.hess * &jet.jac;
    let a = degree as f64;
    Ok(WeitzenboeckShift {
        degree,
        scalar: a * (n as f64 - a) * fv.f_sq - a * fv.box_f,
        tensor: nf * (2.0 * a - n as f64),
        metric: jet.metric(),
    })
}

/// Shift for `Rm = g o T`: `(2a - n) D(T) - a Tr(T)`.
pub fn lemma_shift(t: &DMatrix<f64>, metric: &DMatrix<f64>, degree: usize) -> Result<WeitzenboeckShift> {
    let n = metric.nrows() as f64;
    let a = degree as f64;
    let trace = (inverse(metric)? * t).trace();
    Ok(WeitzenboeckShift { degree, scalar: -a * trace, tensor: t * (2.0 * a - n), metric: metric.clone() })
}

/// `j^a i^b R(e_a, e_b)` with `R(u, v) = Rm(e_c, e_d, u, v) j^c i^d`, as a matrix on `degree`-forms.
pub fn weitzenboeck_from_riemann(rm: &Tensor4, metric: &DMatrix<f64>, degree: usize) -> Result<DMatrix<f64>> {
    let n = rm.dim();
    let ginv = inverse(metric)?;
    let raise = |v: usize| -> Vec<f64> { (0..n).map(|k| ginv[(v, k)]).collect() };
    Ok(operator_matrix(n, degree, |alpha| {
        let mut out = Form::zeros(n);
        for a in 0..n {
            for b in 0..n {
                // R(e_a, e_b) alpha
                let mut r = Form::zeros(n);
                for c in 0..n {
                    for d in 0..n {
                        let k = rm.get(c, d, a, b);
                        if k != 0.0 {
                            r = r.add(&alpha.interior(&raise(d)).ext(&unit(n, c)).scale(k));
                        }
                    }
                }
                out = out.add(&r.interior(&raise(b)).ext(&unit(n, a)));
            }
        }
        out
    }))
}
