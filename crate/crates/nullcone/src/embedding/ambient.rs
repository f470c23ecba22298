use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::Error;
use crate::numeric::Real;

/// Sign of the spatial curvature of an FLRW section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curvature {
    Negative,
    Flat,
    Positive,
}

impl Curvature {
    pub const ALL: [Curvature; 3] = [Curvature::Negative, Curvature::Flat, Curvature::Positive];

    pub fn value(self) -> f64 {
        match self {
            Curvature::Negative => -1.0,
            Curvature::Flat => 0.0,
            Curvature::Positive => 1.0,
        }
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curvature::Negative => "-1",
            Curvature::Flat => "0",
            Curvature::Positive => "+1",
        })
    }
}

impl FromStr for Curvature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "-1" => Ok(Curvature::Negative),
            "0" | "+0" | "-0" => Ok(Curvature::Flat),
            "1" | "+1" => Ok(Curvature::Positive),
            other => Err(Error::Invalid(format!("k must be -1, 0 or +1, got `{other}`"))),
        }
    }
}

/// Diagonal of the ambient metric: `+` on indices 0 and `dim-1`, `-` elsewhere.
pub fn eta_diag(dim: usize) -> Vec<f64> {
    (0..dim).map(|i| if i == 0 || i + 1 == dim { 1.0 } else { -1.0 }).collect()
}

pub fn eta(dim: usize) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(eta_diag(dim)))
}

pub fn eta_dot<S: Real>(u: &[S], v: &[S]) -> S {
    let d = u.len();
    let mut acc = S::cst(0.0);
    for i in 0..d {
        let s = if i == 0 || i + 1 == d { 1.0 } else { -1.0 };
        acc = acc + u[i].clone() * v[i].clone() * s;
    }
    acc
}

/// `c(y) = y.y / 2`; the null cone is its zero set.
pub fn c_of<S: Real>(y: &[S]) -> S {
    eta_dot(y, y) * 0.5
}
