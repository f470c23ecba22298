use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};

use super::{c_of, eta, eta_diag, DefiningFunction};

/// Generator of the rotation or boost in the `(a, b)` coordinate plane, `X = e_a e_b^T eta - e_b e_a^T eta`.
pub fn plane_generator(dim: usize, a: usize, b: usize) -> Result<DMatrix<f64>> {
    if a >= dim || b >= dim || a == b {
        return Err(Error::Invalid(format!("plane ({a}, {b}) is not a coordinate plane of R^{dim}")));
    }
    let e = eta_diag(dim);
    let mut x = DMatrix::zeros(dim, dim);
    x[(a, b)] = e[b];
    x[(b, a)] = -e[a];
    Ok(x)
}

/// `exp(theta X)` for a coordinate-plane generator, in closed form.
pub fn plane_exponential(dim: usize, a: usize, b: usize, theta: f64) -> Result<DMatrix<f64>> {
    let x = plane_generator(dim, a, b)?;
    let x2 = &x * &x;
    let e = eta_diag(dim);
    let id = DMatrix::identity(dim, dim);
    Ok(if e[a] == e[b] {
        id + x * theta.sin() + x2 * (1.0 - theta.cos())
    } else {
        id + x * theta.sinh() + x2 * (theta.cosh() - 1.0)
    })
}

/// Product of `factors` plane exponentials with random planes and parameters in `[-scale, scale]`.
pub fn random_group_element<R: Rng + ?Sized>(dim: usize, factors: usize, scale: f64, rng: &mut R) -> DMatrix<f64> {
    let mut g = DMatrix::identity(dim, dim);
    for _ in 0..factors {
        let a = rng.gen_range(0..dim);
        let mut b = rng.gen_range(0..dim - 1);
        if b >= a {
            b += 1;
        }
        let theta = rng.gen_range(-scale..=scale);
        g = plane_exponential(dim, a, b, theta).expect("valid plane") * g;
    }
    g
}

/// `max |g^T eta g - eta|`.
pub fn group_defect(g: &DMatrix<f64>) -> f64 {
    let e = eta(g.nrows());
    (g.transpose() * &e * g - e).amax()
}

/// Moves `y` along its ray from the section `f1 = 1` to the section `f2 = 1`.
pub fn rescale_between_sections(y: &[f64], f1: &DefiningFunction, f2: &DefiningFunction) -> Result<Vec<f64>> {
    let v1 = f1.value(y)?;
    if (v1 - 1.0).abs() > 1e-10 {
        return Err(Error::Constraint(format!("point is not on the source section, f1 = {v1}")));
    }
    let v2 = f2.value(y)?;
    if v2.abs() < 1e-14 {
        return Err(Error::Domain("the ray misses the target section (f2 = 0)".into()));
    }
    let image: Vec<f64> = y.iter().map(|v| v * v1 / v2).collect();
    let check = f2.value(&image)?;
    if (check - 1.0).abs() > 1e-10 {
        return Err(Error::Domain(format!("the ray meets the target section with f2 = {check}")));
    }
    Ok(image)
}

/// Action `y -> g y / f(g y)` of `g` in SO(2, n) on the section of `f`, with its conformal factor `1 / f(g y)`.
pub fn conformal_action(g: &DMatrix<f64>, f: &DefiningFunction, y: &[f64]) -> Result<(Vec<f64>, f64)> {
    let dim = y.len();
    if g.nrows() != dim || g.ncols() != dim {
        return Err(Error::Invalid(format!("group element must be {dim}x{dim}")));
    }
    let defect = group_defect(g);
    if defect > 1e-10 {
        return Err(Error::Invalid(format!("matrix is not in SO(2, n): |g^T eta g - eta| = {defect:e}")));
    }
    let gy = g * DVector::from_column_slice(y);
    let fv = f.value(gy.as_slice())?;
    if fv <= 0.0 {
        return Err(Error::Domain(format!("orbit leaves the section domain, f(g y) = {fv}")));
    }
    let image: Vec<f64> = gy.iter().map(|v| v / fv).collect();
    debug_assert!(c_of(&image).abs() <= 1e-8 * image.iter().map(|v| v * v).sum::<f64>().max(1.0));
    Ok((image, 1.0 / fv))
}
