use crate::error::{Error, Result};

/// Step and acceptance threshold for Richardson-extrapolated central differences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdConfig {
    /// Base step, multiplied by `max(1, |x_i|)` per coordinate.
    pub step: f64,
    /// Largest tolerated gap between the two step levels, relative to `max(1, |D|)`.
    pub tol: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig { step: 1e-3, tol: 1e-4 }
    }
}

fn five_point(f0: &[f64], f1: &[f64], f2: &[f64], f3: &[f64], h: f64) -> Vec<f64> {
    // points x-2h, x-h, x+h, x+2h
    (0..f0.len()).map(|k| (f0[k] - 8.0 * f1[k] + 8.0 * f2[k] - f3[k]) / (12.0 * h)).collect()
}

/// Partial derivatives of a vector-valued function: `result[i][k] = d f_k / d x_i`.
pub fn gradient_with<F>(f: F, x: &[f64], cfg: FdConfig) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let mut out = Vec::with_capacity(x.len());
    let mut p = x.to_vec();
    for i in 0..x.len() {
        let h = cfg.step * x[i].abs().max(1.0);
        let mut eval = |s: f64| -> Result<Vec<f64>> {
            p[i] = x[i] + s;
            let r = f(&p);
            p[i] = x[i];
            r
        };
        let level = |eval: &mut dyn FnMut(f64) -> Result<Vec<f64>>, h: f64| -> Result<Vec<f64>> {
            let (a, b, c, d) = (eval(-2.0 * h)?, eval(-h)?, eval(h)?, eval(2.0 * h)?);
            Ok(five_point(&a, &b, &c, &d, h))
        };
        let coarse = level(&mut eval, h)?;
        let fine = level(&mut eval, 0.5 * h)?;
        let mut d = Vec::with_capacity(fine.len());
        for k in 0..fine.len() {
            let gap = (fine[k] - coarse[k]).abs();
            if !gap.is_finite() || gap > cfg.tol * fine[k].abs().max(1.0) {
                return Err(Error::FiniteDifference(format!(
                    "coordinate {i}, component {k}: {:.3e} vs {:.3e}",
                    coarse[k], fine[k]
                )));
            }
            d.push(fine[k] + (fine[k] - coarse[k]) / 15.0);
        }
        out.push(d);
    }
    Ok(out)
}

/// [`gradient_with`] at the default configuration.
pub fn gradient<F>(f: F, x: &[f64]) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    gradient_with(f, x, FdConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_trig() {
        let f = |x: &[f64]| Ok(vec![x[0].powi(3) * x[1], (x[0] * x[1]).sin()]);
        let g = gradient(f, &[1.3, -0.4]).unwrap();
        assert!((g[0][0] - 3.0 * 1.3f64.powi(2) * -0.4).abs() < 1e-11);
        assert!((g[1][1] - 1.3 * (1.3f64 * -0.4).cos()).abs() < 1e-11);
    }

    #[test]
    fn nested_second_derivative() {
        let f = |x: &[f64]| Ok(vec![x[0].exp() * x[1].cos()]);
        let inner = |x: &[f64]| gradient(f, x).map(|g| g.into_iter().flatten().collect());
        let h = gradient(inner, &[0.2, 0.7]).unwrap();
        assert!((h[1][0] + 0.2f64.exp() * 0.7f64.sin()).abs() < 1e-8);
    }

    #[test]
    fn singularity_is_reported() {
        let f = |x: &[f64]| Ok(vec![1.0 / x[0]]);
        assert!(matches!(gradient(f, &[1e-3]), Err(Error::FiniteDifference(_))));
    }
}
