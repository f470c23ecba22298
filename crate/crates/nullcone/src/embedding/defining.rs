use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numeric::{atan2, HyperDual, Real};
use crate::scalefactor::ScaleExpr;

use super::{eta_diag, Curvature};

/// Homogeneous degree-one function on the ambient space whose unit level set,
/// intersected with the null cone, is the spacetime.
#[derive(Clone, Debug, PartialEq)]
pub enum DefiningFunction {
    /// FLRW section of curvature `k` and scale factor `a`.
    Flrw { k: Curvature, a: ScaleExpr, dim: usize },
    /// Constant-curvature section with `F^2 = kappa`: `sqrt(kappa) y^{n+1}` for
    /// `kappa > 0`, `sqrt(-kappa) y^n` for `kappa < 0`, `y^n + y^{n+1}` for `kappa = 0`.
    Adsm { kappa: f64, dim: usize },
    /// `f = A_a y^a`.
    Linear { coeffs: Vec<f64> },
    /// `f = base(y) / w(A.y / B.y)`: a conformal rescaling by a degree-zero weight.
    Composed { base: Box<DefiningFunction>, num: Vec<f64>, den: Vec<f64>, weight: ScaleExpr },
}

/// Value, gradient and Hessian of a defining function at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct FValue {
    pub value: f64,
    pub grad: Vec<f64>,
    pub hess: DMatrix<f64>,
    /// `F^2 = eta^{ab} d_a f d_b f`.
    pub f_sq: f64,
    /// Ambient d'Alembertian `eta^{ab} d_a d_b f`.
    pub box_f: f64,
}

impl FValue {
    /// Components of the vector field `F = eta^{-1} df`.
    pub fn f_vector(&self) -> Vec<f64> {
        let e = eta_diag(self.grad.len());
        self.grad.iter().zip(&e).map(|(g, s)| g * s).collect()
    }
}

fn linear<S: Real>(coeffs: &[f64], y: &[S]) -> S {
    coeffs.iter().zip(y).fold(S::cst(0.0), |acc, (c, yi)| if *c == 0.0 { acc } else { acc + yi.clone() * *c })
}

impl DefiningFunction {
    pub fn flrw(k: Curvature, a: ScaleExpr, n: usize) -> Self {
        DefiningFunction::Flrw { k, a, dim: n + 2 }
    }

    pub fn adsm(kappa: f64, n: usize) -> Self {
        DefiningFunction::Adsm { kappa, dim: n + 2 }
    }

    /// Minkowski section `f = y^n + y^{n+1}`.
    pub fn minkowski(n: usize) -> Self {
        Self::adsm(0.0, n)
    }

    /// Ambient dimension `n + 2`.
    pub fn dim(&self) -> usize {
        match self {
            DefiningFunction::Flrw { dim, .. } | DefiningFunction::Adsm { dim, .. } => *dim,
            DefiningFunction::Linear { coeffs } => coeffs.len(),
            DefiningFunction::Composed { base, .. } => base.dim(),
        }
    }

    /// Coefficients of a linear defining function, if it is one.
    pub fn linear_coeffs(&self) -> Option<Vec<f64>> {
        match self {
            DefiningFunction::Linear { coeffs } => Some(coeffs.clone()),
            DefiningFunction::Adsm { kappa, dim } => {
                let mut c = vec![0.0; *dim];
                let (n, n1) = (dim - 2, dim - 1);
                if *kappa > 0.0 {
                    c[n1] = kappa.sqrt();
                } else if *kappa < 0.0 {
                    c[n] = (-kappa).sqrt();
                } else {
                    c[n] = 1.0;
                    c[n1] = 1.0;
                }
                Some(c)
            }
            _ => None,
        }
    }

    pub fn eval<S: Real>(&self, y: &[S]) -> Result<S> {
        if y.len() != self.dim() {
            return Err(Error::Invalid(format!("expected {} ambient coordinates, got {}", self.dim(), y.len())));
        }
        if let Some(c) = self.linear_coeffs() {
            return Ok(linear(&c, y));
        }
        match self {
            DefiningFunction::Flrw { k, a, dim } => flrw_eval(*k, a, &y[..*dim]),
            DefiningFunction::Composed { base, num, den, weight } => {
                let b = base.eval(y)?;
                let d = linear(den, y);
                if d.value() == 0.0 {
                    return Err(Error::Branch("weight denominator vanishes".into()));
                }
                let w = weight.eval_positive(&(linear(num, y) / d))?;
                Ok(b / w)
            }
            _ => unreachable!("linear variants handled above"),
        }
    }

    pub fn value(&self, y: &[f64]) -> Result<f64> {
        let v = self.eval(y)?;
        if !v.is_finite() {
            return Err(Error::Domain("non-finite defining function".into()));
        }
        Ok(v)
    }

    /// Value, gradient, Hessian, `F^2` and `box f` at `y`.
    pub fn evaluate(&self, y: &[f64]) -> Result<FValue> {
        let x = HyperDual::seed(y);
        let r = self.eval(&x)?;
        if !r.is_finite() {
            return Err(Error::Domain("non-finite derivative of the defining function".into()));
        }
        let dim = y.len();
        let grad: Vec<f64> = (0..dim).map(|i| r.grad().get(i).copied().unwrap_or(0.0)).collect();
        let hess = DMatrix::from_fn(dim, dim, |i, j| if r.dirs() > 0 { r.hess(i, j) } else { 0.0 });
        let e = eta_diag(dim);
        let f_sq = (0..dim).map(|i| e[i] * grad[i] * grad[i]).sum();
        let box_f = (0..dim).map(|i| e[i] * hess[(i, i)]).sum();
        Ok(FValue { value: r.value(), grad, hess, f_sq, box_f })
    }
}

fn flrw_eval<S: Real>(k: Curvature, a: &ScaleExpr, y: &[S]) -> Result<S> {
    let d = y.len();
    let (y0, yn, yn1) = (&y[0], &y[d - 2], &y[d - 1]);
    match k {
        Curvature::Flat => {
            let s = yn.clone() + yn1.clone();
            if s.value() <= 0.0 {
                return Err(Error::Branch(format!("k = 0 needs y^n + y^(n+1) > 0, got {}", s.value())));
            }
            let t = y0.clone() / s.clone();
            Ok(s / a.eval_positive(&t)?)
        }
        Curvature::Negative => {
            if yn.value() <= yn1.value().abs() {
                return Err(Error::Branch(format!(
                    "k = -1 needs y^n > |y^(n+1)|, got {} and {}",
                    yn.value(),
                    yn1.value()
                )));
            }
            let t = (yn1.clone() / yn.clone()).atanh();
            let rho = (yn.sq() - yn1.sq()).sqrt();
            Ok(rho / a.eval_positive(&t)?)
        }
        Curvature::Positive => {
            let rho2 = y0.sq() + yn1.sq();
            if rho2.value() <= 0.0 {
                return Err(Error::Branch("k = +1 needs (y^0, y^(n+1)) != 0".into()));
            }
            let t = atan2(yn1, y0);
            Ok(rho2.sqrt() / a.eval_positive(&t)?)
        }
    }
}

/// Value, gradient, Hessian and `F^2` of `f` at `y`.
pub fn defining_function_value(f: &DefiningFunction, y: &[f64]) -> Result<FValue> {
    f.evaluate(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{embed_point, ChartPoint};
    use crate::scalefactor::Preset;

    #[test]
    fn constant_curvature_norms() {
        let y = [0.3, 0.1, -0.2, 0.5, 1.2, 0.9];
        for (kappa, want) in [(1.0, 1.0), (4.0, 4.0), (-1.0, -1.0), (0.0, 0.0)] {
            let v = DefiningFunction::adsm(kappa, 4).evaluate(&y).unwrap();
            assert!((v.f_sq - want).abs() < 1e-15);
            assert_eq!(v.box_f, 0.0);
        }
    }

    #[test]
    fn flat_matter_is_one_on_its_embedding() {
        let p = ChartPoint::new(Curvature::Flat, 1.0, 2.0, vec![0.0, 0.0]);
        let y = embed_point(Curvature::Flat, &Preset::MatterK0.expr(), &p).unwrap();
        let f = DefiningFunction::flrw(Curvature::Flat, Preset::MatterK0.expr(), 4);
        assert!((f.value(&y).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn branch_errors() {
        let f = DefiningFunction::flrw(Curvature::Negative, Preset::Einstein.expr(), 4);
        assert!(matches!(f.value(&[1.0, 0.0, 0.0, 0.0, 1.0, 2.0]), Err(Error::Branch(_))));
        let f = DefiningFunction::flrw(Curvature::Flat, Preset::Einstein.expr(), 4);
        assert!(matches!(f.value(&[1.0, 0.0, 0.0, 0.0, -1.0, 0.5]), Err(Error::Branch(_))));
    }

    #[test]
    fn closed_branch_past_quarter_period() {
        // t = 2 lies beyond the principal range of atan(y^{n+1}/y^0)
        let a = Preset::DsKp1.expr();
        let p = ChartPoint::n4(Curvature::Positive, 2.0, 0.7);
        let y = embed_point(Curvature::Positive, &a, &p).unwrap();
        let f = DefiningFunction::flrw(Curvature::Positive, a, 4);
        assert!((f.value(&y).unwrap() - 1.0).abs() < 1e-14);
    }
}
