//! Minkowski space as a base for FLRW spaces: conformal factors `Omega(xi)` with
//! `eta_FLRW = Omega^2 eta_0` and the coordinate changes realizing them.

use crate::error::{Error, Result};
use crate::scalefactor::ScaleExpr;

use super::sphere_angles;

fn split(xi: &[f64]) -> Result<(f64, f64, Vec<f64>)> {
    if xi.len() < 2 {
        return Err(Error::Invalid("need at least two cartesian coordinates".into()));
    }
    let rho = xi[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok((xi[0], rho, xi[1..].to_vec()))
}

fn mink_sq(xi: &[f64]) -> f64 {
    xi[0] * xi[0] - xi[1..].iter().map(|v| v * v).sum::<f64>()
}

/// `(1/sqrt k) tan^{-1}(sqrt k z)` for `k > 0`, its `tanh^{-1}` analogue for `k < 0` and `z` at `k = 0`.
fn arc_k(k: f64, z: f64) -> Result<f64> {
    if k > 0.0 {
        let s = k.sqrt();
        Ok((s * z).atan() / s)
    } else if k < 0.0 {
        let s = (-k).sqrt();
        if (s * z).abs() >= 1.0 {
            return Err(Error::Branch(format!("atanh argument {} outside (-1, 1)", s * z)));
        }
        Ok((s * z).atanh() / s)
    } else {
        Ok(z)
    }
}

/// Conformal factor of a curvature-`k` FLRW metric over cartesian Minkowski coordinates.
///
/// `k` may be any real number; `k = 0` gives `a(xi^0)` and the family is continuous there.
pub fn mink_base_conformal_factor(k: f64, a: &ScaleExpr, xi: &[f64]) -> Result<f64> {
    let (x0, _, _) = split(xi)?;
    let den = 1.0 - 0.25 * k * mink_sq(xi);
    if den <= 1e-12 {
        return Err(Error::Branch(format!("1 - k xi.xi / 4 = {den} is not positive")));
    }
    let q = den * den + k * x0 * x0;
    if q <= 0.0 {
        return Err(Error::Branch(format!("conformal factor radicand {q} is not positive")));
    }
    let t = arc_k(k, x0 / den)?;
    Ok(a.eval_positive(&t)? / q.sqrt())
}

/// FLRW chart coordinates `(t, chi, angles)` of a Minkowski point, for the map behind
/// [`mink_base_conformal_factor`].
pub fn mink_to_flrw(k: f64, xi: &[f64]) -> Result<Vec<f64>> {
    let (x0, rho, spatial) = split(xi)?;
    let den = 1.0 - 0.25 * k * mink_sq(xi);
    if den <= 1e-12 {
        return Err(Error::Branch(format!("1 - k xi.xi / 4 = {den} is not positive")));
    }
    let half_u = arc_k(k, 0.5 * (x0 + rho))?;
    let half_v = arc_k(k, 0.5 * (x0 - rho))?;
    let mut out = vec![half_u + half_v, half_u - half_v];
    out.extend(angles_of(&spatial, rho)?);
    Ok(out)
}

fn angles_of(spatial: &[f64], rho: f64) -> Result<Vec<f64>> {
    if rho < 1e-12 {
        return Err(Error::DegenerateChart("point on the spatial axis".into()));
    }
    let w: Vec<f64> = spatial.iter().map(|v| v / rho).collect();
    Ok(sphere_angles(&w))
}

/// The `k = -1` exponential form `a(ln(xi.xi) / 2) / (4 sqrt(xi.xi))`.
///
/// Its square times `eta_0` is the open FLRW metric with scale factor `a / 4` in the
/// coordinates of [`mink_to_flrw_exponential`].
pub fn mink_exponential_factor(a: &ScaleExpr, xi: &[f64]) -> Result<f64> {
    split(xi)?;
    let s = mink_sq(xi);
    if s <= 0.0 {
        return Err(Error::Branch(format!("xi.xi = {s} must be positive")));
    }
    Ok(a.eval_positive(&(0.5 * s.ln()))? / (4.0 * s.sqrt()))
}

/// Chart coordinates `(t, chi, angles)` with `xi = e^t (cosh chi, sinh chi omega)`, inside the future cone.
pub fn mink_to_flrw_exponential(xi: &[f64]) -> Result<Vec<f64>> {
    let (x0, rho, spatial) = split(xi)?;
    if x0 <= rho {
        return Err(Error::Branch("point outside the future light cone".into()));
    }
    let mut out = vec![0.5 * mink_sq(xi).ln(), (rho / x0).atanh()];
    out.extend(angles_of(&spatial, rho)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{induced_metric, Curvature, Flrw, FlrwChart};
    use crate::numeric::gradient;
    use crate::scalefactor::Preset;
    use nalgebra::DMatrix;

    fn eta0_pullback(map: &dyn Fn(&[f64]) -> Result<Vec<f64>>, x: &[f64]) -> DMatrix<f64> {
        let j = gradient(map, x).unwrap();
        let n = x.len();
        DMatrix::from_fn(n, n, |i, k| j[i][0] * j[k][0] - (1..n).map(|m| j[i][m] * j[k][m]).sum::<f64>())
    }

    fn xi_of_akpm1(k: f64) -> impl Fn(&[f64]) -> Result<Vec<f64>> {
        move |x: &[f64]| {
            let (t, chi) = (x[0], x[1]);
            let (a, b) = (0.5 * (t + chi), 0.5 * (t - chi));
            let tan_k = |z: f64| if k > 0.0 { z.tan() } else { z.tanh() };
            let (u, v) = (2.0 * tan_k(a), 2.0 * tan_k(b));
            let rho = 0.5 * (u - v);
            let w = crate::embedding::sphere(&x[2..]);
            let mut xi = vec![0.5 * (u + v)];
            xi.extend(w.into_iter().map(|wi| rho * wi));
            Ok(xi)
        }
    }

    #[test]
    fn flat_factor_is_the_scale_factor() {
        let a = Preset::MatterK0.expr();
        let xi = [1.3, 0.2, -0.4, 0.1];
        let w = mink_base_conformal_factor(0.0, &a, &xi).unwrap();
        assert_eq!(w, 1.3f64.powi(2));
        let near = mink_base_conformal_factor(1e-6, &a, &xi).unwrap();
        assert!((near - w).abs() < 1e-5);
        let near = mink_base_conformal_factor(-1e-6, &a, &xi).unwrap();
        assert!((near - w).abs() < 1e-5);
    }

    #[test]
    fn curved_factors_reproduce_flrw_metrics() {
        for (k, curv, a) in [(1.0, Curvature::Positive, Preset::DsKp1), (-1.0, Curvature::Negative, Preset::DsKm1)] {
            let a = a.expr();
            let flrw = FlrwChart::spherical(Flrw::n4(curv, a.clone()));
            let x = [0.9, 0.35, 1.1, 0.4];
            let map = xi_of_akpm1(k);
            let xi = map(&x).unwrap();
            let back = mink_to_flrw(k, &xi).unwrap();
            for (p, q) in back.iter().zip(x) {
                assert!((p - q).abs() < 1e-12);
            }
            let omega = mink_base_conformal_factor(k, &a, &xi).unwrap();
            let lhs = eta0_pullback(&map, &x) * (omega * omega);
            let rhs = induced_metric(&flrw, &x).unwrap();
            assert!((lhs - &rhs).norm() < 1e-8 * rhs.norm());
        }
    }

    #[test]
    fn exponential_form() {
        let one = crate::scalefactor::ScaleExpr::constant(1.0);
        let xi = [(-1.0f64).exp(), 0.0, 0.0, 0.0];
        let w = mink_exponential_factor(&one, &xi).unwrap();
        assert!((w - std::f64::consts::E / 4.0).abs() < 1e-14);

        let a = Preset::DsKm1.expr();
        let x = [0.6, 0.45, 1.0, 2.0];
        let map = |x: &[f64]| -> Result<Vec<f64>> {
            let e = x[0].exp();
            let w = crate::embedding::sphere(&x[2..]);
            let mut xi = vec![e * x[1].cosh()];
            xi.extend(w.into_iter().map(|wi| e * x[1].sinh() * wi));
            Ok(xi)
        };
        let xi = map(&x).unwrap();
        let back = mink_to_flrw_exponential(&xi).unwrap();
        for (p, q) in back.iter().zip(x) {
            assert!((p - q).abs() < 1e-12);
        }
        let omega = mink_exponential_factor(&a, &xi).unwrap();
        let lhs = eta0_pullback(&map, &x) * (omega * omega);
        let quarter = Flrw::n4(Curvature::Negative, a.scaled(0.25));
        let rhs = induced_metric(&FlrwChart::spherical(quarter), &x).unwrap();
        assert!((lhs - &rhs).norm() < 1e-8 * rhs.norm());
    }

    #[test]
    fn branch_errors() {
        let a = ScaleExpr::constant(1.0);
        assert!(matches!(mink_base_conformal_factor(1.0, &a, &[3.0, 0.0, 0.0, 0.0]), Err(Error::Branch(_))));
        assert!(matches!(mink_exponential_factor(&a, &[0.1, 1.0, 0.0, 0.0]), Err(Error::Branch(_))));
    }
}
