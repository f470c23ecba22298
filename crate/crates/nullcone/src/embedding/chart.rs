use std::f64::consts::PI;

use crate::numeric::Real;

use super::Curvature;

/// Intrinsic FLRW coordinates `(t, chi, angles)` with `n - 2` sphere angles.
///
/// The sphere `S^{n-2}` uses nested angles: `w1 = cos th1`,
/// `w2 = sin th1 cos th2`, ..., `w_{m+1} = sin th1 ... sin th_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub k: Curvature,
    pub t: f64,
    pub chi: f64,
    pub angles: Vec<f64>,
}

impl ChartPoint {
    pub fn new(k: Curvature, t: f64, chi: f64, angles: Vec<f64>) -> Self {
        let chi = if k == Curvature::Positive { chi.rem_euclid(2.0 * PI) } else { chi };
        ChartPoint { k, t, chi, angles }
    }

    /// Point for `n = 4` with generic default angles.
    pub fn n4(k: Curvature, t: f64, chi: f64) -> Self {
        Self::new(k, t, chi, vec![1.1, 0.4])
    }

    pub fn from_coords(k: Curvature, x: &[f64]) -> Self {
        Self::new(k, x[0], x[1], x[2..].to_vec())
    }

    /// Spacetime dimension `n`.
    pub fn dim(&self) -> usize {
        self.angles.len() + 2
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut v = vec![self.t, self.chi];
        v.extend_from_slice(&self.angles);
        v
    }

    pub fn omega(&self) -> Vec<f64> {
        sphere(&self.angles)
    }

    /// Radial function `r(chi)`: `sinh`, identity or `sin` for k = -1, 0, +1.
    pub fn radius(&self) -> f64 {
        match self.k {
            Curvature::Negative => self.chi.sinh(),
            Curvature::Flat => self.chi,
            Curvature::Positive => self.chi.sin(),
        }
    }

    /// Coordinates `(t, r w)` of the isotropic cartesian chart.
    pub fn cartesian(&self) -> Vec<f64> {
        let r = self.radius();
        let mut v = vec![self.t];
        v.extend(self.omega().into_iter().map(|w| r * w));
        v
    }
}

/// Unit vector on `S^m` from `m` nested angles.
pub fn sphere<S: Real>(angles: &[S]) -> Vec<S> {
    let m = angles.len();
    let mut out = Vec::with_capacity(m + 1);
    let mut prod = S::cst(1.0);
    for (j, th) in angles.iter().enumerate() {
        out.push(prod.clone() * th.cos());
        prod = prod * th.sin();
        if j + 1 == m {
            out.push(prod.clone());
        }
    }
    if m == 0 {
        out.push(S::cst(1.0));
    }
    out
}

/// Nested angles of a unit vector (inverse of [`sphere`] on the open chart).
pub fn sphere_angles(w: &[f64]) -> Vec<f64> {
    let m = w.len() - 1;
    (0..m)
        .map(|j| {
            if j + 1 == m {
                w[m].atan2(w[m - 1])
            } else {
                let tail: f64 = w[j + 1..].iter().map(|x| x * x).sum::<f64>().sqrt();
                tail.atan2(w[j])
            }
        })
        .collect()
}

/// Diagonal of the round metric on `S^m` in nested angles.
pub fn sphere_metric_diag(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len());
    let mut prod = 1.0;
    for th in angles {
        out.push(prod);
        prod *= th.sin().powi(2);
    }
    out
}
