use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::scalefactor::ScaleExpr;

use super::{sphere, sphere_metric_diag, ChartPoint, Curvature, DefiningFunction, MAX_N};

/// FLRW spacetime of dimension `n` with spatial curvature `k` and scale factor `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct Flrw {
    pub k: Curvature,
    pub a: ScaleExpr,
    pub n: usize,
}

impl Flrw {
    pub fn new(k: Curvature, a: ScaleExpr, n: usize) -> Result<Flrw> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Invalid(format!("dimension n must be in 2..={MAX_N}, got {n}")));
        }
        Ok(Flrw { k, a, n })
    }

    pub fn n4(k: Curvature, a: ScaleExpr) -> Flrw {
        Flrw { k, a, n: 4 }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n + 2
    }

    pub fn defining_function(&self) -> DefiningFunction {
        DefiningFunction::Flrw { k: self.k, a: self.a.clone(), dim: self.n + 2 }
    }

    /// Embedding in the chart `(t, chi, angles)`.
    pub fn embed_spherical<S: Real>(&self, x: &[S]) -> Result<Vec<S>> {
        self.check_len(x)?;
        let (t, chi) = (&x[0], &x[1]);
        let a = self.a.eval_positive(t)?;
        let w = sphere(&x[2..]);
        let (y0, radial, yn, yn1) = match self.k {
            Curvature::Negative => (chi.cosh(), chi.sinh(), t.cosh(), t.sinh()),
            Curvature::Flat => {
                let d = t.sq() - chi.sq();
                (t.clone(), chi.clone(), (d.clone() + 1.0) * 0.5, (-d + 1.0) * 0.5)
            }
            Curvature::Positive => (t.cos(), chi.sin(), chi.cos(), t.sin()),
        };
        let mut y = Vec::with_capacity(self.n + 2);
        y.push(a.clone() * y0);
        for wi in w {
            y.push(a.clone() * radial.clone() * wi);
        }
        y.push(a.clone() * yn);
        y.push(a * yn1);
        Ok(y)
    }

    /// Embedding in the isotropic chart `(t, r^1, ..., r^{n-1})`.
    pub fn embed_cartesian<S: Real>(&self, x: &[S]) -> Result<Vec<S>> {
        self.check_len(x)?;
        let t = &x[0];
        let r = &x[1..];
        let a = self.a.eval_positive(t)?;
        let r2 = r.iter().fold(S::cst(0.0), |acc, ri| acc + ri.sq());
        let (y0, yn, yn1) = match self.k {
            Curvature::Negative => ((r2 + 1.0).sqrt(), t.cosh(), t.sinh()),
            Curvature::Flat => {
                let s = t.sq() - r2;
                (t.clone(), (s.clone() + 1.0) * 0.5, (-s + 1.0) * 0.5)
            }
            Curvature::Positive => {
                if r2.value() >= 1.0 {
                    return Err(Error::Domain(format!("k = +1 chart needs r < 1, got r^2 = {}", r2.value())));
                }
                (t.cos(), (-r2 + 1.0).sqrt(), t.sin())
            }
        };
        let mut y = Vec::with_capacity(self.n + 2);
        y.push(a.clone() * y0);
        for ri in r {
            y.push(a.clone() * ri.clone());
        }
        y.push(a.clone() * yn);
        y.push(a * yn1);
        Ok(y)
    }

    pub fn embed_point(&self, p: &ChartPoint) -> Result<Vec<f64>> {
        if p.dim() != self.n {
            return Err(Error::Invalid(format!("chart point has dimension {}, section {}", p.dim(), self.n)));
        }
        self.embed_spherical(&p.coords())
    }

    /// `a^2 [dt^2 - dchi^2 - r(chi)^2 g_sphere]` in the chart `(t, chi, angles)`.
    pub fn closed_form_metric(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check_len(x)?;
        let a = self.a.eval_positive(&x[0])?;
        let r = match self.k {
            Curvature::Negative => x[1].sinh(),
            Curvature::Flat => x[1],
            Curvature::Positive => x[1].sin(),
        };
        let mut d = vec![1.0, -1.0];
        d.extend(sphere_metric_diag(&x[2..]).into_iter().map(|s| -r * r * s));
        Ok(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)) * (a * a))
    }

    /// `a^2 [dt^2 - (delta_ij + k r_i r_j / (1 - k r^2)) dr^i dr^j]` in the isotropic chart.
    pub fn closed_form_metric_cartesian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check_len(x)?;
        let a = self.a.eval_positive(&x[0])?;
        let k = self.k.value();
        let r = &x[1..];
        let r2: f64 = r.iter().map(|v| v * v).sum();
        let n = self.n;
        Ok(DMatrix::from_fn(n, n, |i, j| {
            let v = match (i, j) {
                (0, 0) => 1.0,
                (0, _) | (_, 0) => 0.0,
                _ => {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    -(delta + k * r[i - 1] * r[j - 1] / (1.0 - k * r2))
                }
            };
            a * a * v
        }))
    }

    fn check_len<S>(&self, x: &[S]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::Invalid(format!("expected {} chart coordinates, got {}", self.n, x.len())));
        }
        Ok(())
    }
}

/// Embeds a chart point of the FLRW section `(k, a)`.
pub fn embed_point(k: Curvature, a: &ScaleExpr, p: &ChartPoint) -> Result<Vec<f64>> {
    Flrw::new(k, a.clone(), p.dim())?.embed_point(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::c_of;
    use crate::scalefactor::Preset;

    #[test]
    fn closed_einstein_at_origin() {
        let p = ChartPoint::n4(Curvature::Positive, 0.0, 0.0);
        let y = embed_point(Curvature::Positive, &Preset::Einstein.expr(), &p).unwrap();
        let want = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        for (a, b) in y.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn flat_matter_substitution() {
        let p = ChartPoint::new(Curvature::Flat, 1.0, 2.0, vec![0.0, 0.0]);
        let y = embed_point(Curvature::Flat, &Preset::MatterK0.expr(), &p).unwrap();
        let want = [1.0, 2.0, 0.0, 0.0, -1.0, 2.0];
        for (a, b) in y.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(c_of(&y).abs() < 1e-15);
    }

    #[test]
    fn open_einstein_on_time_axis() {
        let s = 0.8;
        let p = ChartPoint::n4(Curvature::Negative, s, 0.0);
        let y = embed_point(Curvature::Negative, &Preset::Einstein.expr(), &p).unwrap();
        assert_eq!(y, vec![1.0, 0.0, 0.0, 0.0, s.cosh(), s.sinh()]);
    }

    #[test]
    fn cartesian_and_spherical_agree() {
        for k in Curvature::ALL {
            let f = Flrw::n4(k, ScaleExpr::parse("1 + t^2").unwrap());
            let p = ChartPoint::n4(k, 0.4, 0.6);
            let a = f.embed_point(&p).unwrap();
            let b = f.embed_cartesian(&p.cartesian()).unwrap();
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).abs() < 1e-14, "k = {k}");
            }
        }
    }
}
