use nalgebra::DMatrix;

use crate::embedding::{chart_jet, eta_diag, induced_metric, ChartMap};
use crate::error::{Error, Result};
use crate::numeric::{gradient, Jet, Real};

use super::algebra::{sign_pow, Form};
use super::field::FormField;
use super::ops::{check_on_section, Ambient};

/// A form-valued function of the chart coordinates.
pub type ChartField<'a> = Box<dyn Fn(&[f64]) -> Result<Form<f64>> + Send + Sync + 'a>;

/// Pullback of an ambient form through the chart Jacobian at the same point.
pub fn pullback_form(jac: &DMatrix<f64>, a: &Form<f64>) -> Form<f64> {
    a.pullback(jac)
}

/// `x -> m_f^* Phi` along a chart.
pub fn pulled_field<'a>(chart: &'a dyn ChartMap, phi: &'a FormField) -> ChartField<'a> {
    Box::new(move |x| {
        let jet = chart_jet(chart, x)?;
        Ok(phi.eval(&jet.y)?.pullback(&jet.jac))
    })
}

/// Exterior derivative of a chart field by central differences.
pub fn intrinsic_d<'a>(beta: ChartField<'a>) -> ChartField<'a> {
    Box::new(move |x| {
        let b0 = beta(x)?;
        let n = b0.dim();
        let grads = gradient(|p: &[f64]| Ok(beta(p)?.coeffs().to_vec()), x)?;
        let mut out = Form::zeros(n);
        for (mu, g) in grads.iter().enumerate() {
            out = out.add(&Form::from_coeffs(n, g.clone()).ext(&unit(n, mu)));
        }
        Ok(out)
    })
}

fn unit(n: usize, k: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[k] = 1.0;
    e
}

/// Hodge star of the induced metric, oriented by the chart order.
pub fn intrinsic_star<'a>(chart: &'a dyn ChartMap, beta: ChartField<'a>) -> ChartField<'a> {
    Box::new(move |x| Ok(beta(x)?.star_metric(&induced_metric(chart, x)?)))
}

pub fn intrinsic_star_inv<'a>(chart: &'a dyn ChartMap, beta: ChartField<'a>) -> ChartField<'a> {
    Box::new(move |x| Ok(beta(x)?.star_inv_metric(&induced_metric(chart, x)?)))
}

/// `delta_f = (-1)^p *_f^{-1} d_f *_f` on each degree `p`.
pub fn intrinsic_delta<'a>(chart: &'a dyn ChartMap, beta: ChartField<'a>) -> ChartField<'a> {
    let signed: ChartField<'a> = Box::new(move |x| Ok(beta(x)?.per_grade(sign_pow)));
    intrinsic_star_inv(chart, intrinsic_d(intrinsic_star(chart, signed)))
}

/// `box_f = -(d_f delta_f + delta_f d_f)`.
pub fn intrinsic_box<'a>(chart: &'a dyn ChartMap, beta: &'a (dyn Fn(&[f64]) -> Result<Form<f64>> + Send + Sync)) -> ChartField<'a> {
    let a: ChartField<'a> = Box::new(move |x| beta(x));
    let b: ChartField<'a> = Box::new(move |x| beta(x));
    let d_delta = intrinsic_d(intrinsic_delta(chart, a));
    let delta_d = intrinsic_delta(chart, intrinsic_d(b));
    Box::new(move |x| Ok(d_delta(x)?.add(&delta_d(x)?).scale(-1.0)))
}

/// `+1` when the chart order agrees with the orientation induced from the ambient
/// space (`{e_mu}` direct iff `{e_mu, e_n, e_{n+1}}` is), `-1` otherwise.
pub fn orientation_sign(chart: &dyn ChartMap, x: &[f64]) -> Result<f64> {
    let f = chart.defining_function();
    let jet = chart_jet(chart, x)?;
    let (en, en1) = super::ops::Projectors::new(&f, &jet.y)?.normal_frame();
    let dim = jet.y.len();
    let n = chart.chart_dim();
    let frame = DMatrix::from_fn(dim, dim, |a, k| match k {
        k if k < n => jet.jac[(a, k)],
        k if k == n => en[a],
        _ => en1[a],
    });
    let det = frame.determinant();
    if det == 0.0 {
        return Err(Error::DegenerateChart("chart and normal frame are not independent".into()));
    }
    Ok(det.signum())
}

/// Ambient operators whose pullbacks are compared with intrinsic ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Star,
    D,
    Delta,
    Box,
}

impl Operator {
    pub const ALL: [Operator; 4] = [Operator::Star, Operator::D, Operator::Delta, Operator::Box];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Star => "star",
            Operator::D => "d",
            Operator::Delta => "delta",
            Operator::Box => "box",
        }
    }

    pub fn from_name(s: &str) -> Option<Operator> {
        Operator::ALL.into_iter().find(|o| o.name() == s)
    }
}

/// Both sides of a restriction identity in chart components.
#[derive(Clone, Debug)]
pub struct Residual {
    pub lhs: Form<f64>,
    pub rhs: Form<f64>,
    /// `max |lhs - rhs|`.
    pub abs: f64,
    /// `abs / max(1, max|lhs|, max|rhs|)`.
    pub rel: f64,
}

impl Residual {
    pub fn new(lhs: Form<f64>, rhs: Form<f64>) -> Residual {
        let abs = lhs.sub(&rhs).max_abs();
        let rel = abs / lhs.max_abs().max(rhs.max_abs()).max(1.0);
        Residual { lhs, rhs, abs, rel }
    }
}

/// Pullback of the ambient operator `which` applied to `phi`, against the intrinsic
/// operator on the pulled-back field plus the correction terms, at chart point `x`.
pub fn restriction_residual(which: Operator, chart: &dyn ChartMap, phi: &FormField, x: &[f64]) -> Result<Residual> {
    let f = chart.defining_function();
    let jet = chart_jet(chart, x)?;
    check_on_section(&f, &jet.y)?;
    let deg = phi.degree().ok_or_else(|| Error::Invalid("restriction needs a field of a single degree".into()))? as f64;
    let n = chart.chart_dim() as f64;
    let amb = Ambient::at(&jet.y);
    let alpha = amb.field(phi)?;
    let fj = amb.scalar(&f)?;
    let fvec = amb.sharp(&amb.grad(&fj));
    let dvec = amb.vector(&super::ops::VectorField::Dilation)?;
    let f2 = amb.dot_up(&fvec, &fvec);
    let boxf = amb.box_scalar(&fj);
    let pull = |a: &Form<Jet>| a.value().pullback(&jet.jac);
    // (L_D + c) beta
    let ld_plus = |b: &Form<Jet>, c: f64| amb.lie(&dvec, b).add(&b.scale(c));
    let s_plus_box = |b: &Form<Jet>| amb.schouten(&fj, b).add(&b.times(&boxf));

    let alpha_f = pulled_field(chart, phi);
    Ok(match which {
        Operator::Star => {
            let lhs = pull(&amb.star(&alpha));
            let inner = pull(&alpha.interior(&dvec).interior(&fvec));
            let sigma = orientation_sign(chart, x)?;
            Residual::new(lhs, inner.star_metric(&jet.metric()).scale(sigma))
        }
        Operator::D => Residual::new(pull(&amb.d(&alpha)), intrinsic_d(alpha_f)(x)?),
        Operator::Delta => {
            let lhs = pull(&amb.codiff(&alpha));
            let c = -2.0 * deg + n + 1.0;
            let i_f = alpha.interior(&fvec);
            let i_d = alpha.interior(&dvec);
            let t1 = ld_plus(&i_f, c);
            let t2 = s_plus_box(&i_d).sub(&ld_plus(&i_d, c).times(&f2));
            let rhs = intrinsic_delta(chart, alpha_f)(x)?.sub(&pull(&t1)).sub(&pull(&t2));
            Residual::new(lhs, rhs)
        }
        Operator::Box => {
            let lhs = pull(&amb.box_form(&alpha));
            let cm = -2.0 * deg + n - 1.0;
            let cp = -2.0 * deg + n + 1.0;
            let lf = amb.lie(&fvec, &alpha);
            let ld = amb.lie(&dvec, &alpha);
            let i_f = alpha.interior(&fvec);
            let i_d = alpha.interior(&dvec);
            let t1 = ld_plus(&lf, cm).add(&amb.d(&i_f).scale(2.0));
            let t2 = s_plus_box(&ld).sub(&ld_plus(&ld, cm).times(&f2)).sub(&amb.d(&i_d).times(&f2).scale(2.0));
            let commutator = amb.d(&s_plus_box(&i_d)).sub(&s_plus_box(&amb.d(&i_d)));
            let df2 = amb.grad(&f2);
            let t3 = commutator.sub(&ld_plus(&i_d, cp).ext(&df2));
            let phi_fn = move |p: &[f64]| alpha_f(p);
            let intrinsic = intrinsic_box(chart, &phi_fn)(x)?;
            Residual::new(lhs, intrinsic.add(&pull(&t1)).add(&pull(&t2)).add(&pull(&t3)))
        }
    })
}

/// `(box_f - R_f / 6) phi_f` against `m_f^*(box phi)` for a scalar field, with
/// `R_f = -n(n-1) F^2 + 2(n-1) box f`.
pub fn conformal_scalar_residual(chart: &dyn ChartMap, phi: &FormField, x: &[f64]) -> Result<Residual> {
    if phi.degree() != Some(0) {
        return Err(Error::Invalid("conformal scalar check needs a scalar field".into()));
    }
    let f = chart.defining_function();
    let jet = chart_jet(chart, x)?;
    check_on_section(&f, &jet.y)?;
    let n = chart.chart_dim() as f64;
    let amb = Ambient::at(&jet.y);
    let lhs = amb.box_form(&amb.field(phi)?).value().pullback(&jet.jac);
    let fv = f.evaluate(&jet.y)?;
    let scalar_curvature = -n * (n - 1.0) * fv.f_sq + 2.0 * (n - 1.0) * fv.box_f;
    let phi_f = pulled_field(chart, phi);
    let value = phi_f(x)?;
    let phi_fn = move |p: &[f64]| phi_f(p);
    let rhs = intrinsic_box(chart, &phi_fn)(x)?.sub(&value.scale(scalar_curvature / 6.0));
    Ok(Residual::new(lhs, rhs))
}

/// Christoffel symbols `Gamma[l][(m, n)]` of the induced metric, by differencing it along the chart.
pub fn christoffel(chart: &dyn ChartMap, x: &[f64]) -> Result<Vec<DMatrix<f64>>> {
    let n = chart.chart_dim();
    let g = induced_metric(chart, x)?;
    let ginv = g.clone().try_inverse().ok_or_else(|| Error::DegenerateChart("singular induced metric".into()))?;
    let dg = gradient(|p: &[f64]| Ok(induced_metric(chart, p)?.as_slice().to_vec()), x)?;
    let dgm = |k: usize, a: usize, b: usize| dg[k][a + n * b];
    Ok((0..n)
        .map(|l| {
            DMatrix::from_fn(n, n, |m, nu| {
                0.5 * (0..n).map(|k| ginv[(l, k)] * (dgm(m, k, nu) + dgm(nu, k, m) - dgm(k, m, nu))).sum::<f64>()
            })
        })
        .collect())
}

/// Pulled-back ambient Hessian of a scalar field against the intrinsic Hessian plus
/// `D(phi) N_f + E_f(phi) eta_f`.
pub fn hessian_restriction_residual(chart: &dyn ChartMap, phi: &FormField, x: &[f64]) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if phi.degree() != Some(0) {
        return Err(Error::Invalid("Hessian restriction needs a scalar field".into()));
    }
    let f = chart.defining_function();
    let jet = chart_jet(chart, x)?;
    check_on_section(&f, &jet.y)?;
    let dim = jet.y.len();
    let n = chart.chart_dim();
    let amb = Ambient::at(&jet.y);
    let p = amb.field(phi)?.get(0).clone();
    let hp = DMatrix::from_fn(dim, dim, |a, b| p.derivative(a).derivative(b).value());
    let lhs = jet.jac.transpose() * hp * &jet.jac;

    let fv = f.evaluate(&jet.y)?;
    let eta = eta_diag(dim);
    let grad_p: Vec<f64> = (0..dim).map(|a| p.derivative(a).value()).collect();
    let d_phi: f64 = grad_p.iter().zip(&jet.y).map(|(g, y)| g * y).sum();
    let f_phi: f64 = (0..dim).map(|a| eta[a] * fv.grad[a] * grad_p[a]).sum();
    let e_phi = fv.value * f_phi - fv.f_sq * d_phi;
    let nf = jet.jac.transpose() * &fv.hess * &jet.jac;
    let metric = jet.metric();

    let scalar = |q: &[f64]| -> Result<Vec<f64>> { Ok(vec![phi.eval(&chart.map(q)?)?.get(0).to_owned()]) };
    let first = |q: &[f64]| -> Result<Vec<f64>> { Ok(gradient(scalar, q)?.into_iter().map(|g| g[0]).collect()) };
    let second = gradient(first, x)?;
    let d1 = first(x)?;
    let gamma = christoffel(chart, x)?;
    let hess_f = DMatrix::from_fn(n, n, |m, nu| second[m][nu] - (0..n).map(|l| gamma[l][(m, nu)] * d1[l]).sum::<f64>());
    let rhs = hess_f + nf * d_phi + metric * e_phi;
    Ok((lhs, rhs))
}
