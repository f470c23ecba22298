use rand::Rng;

use crate::embedding::DefiningFunction;
use crate::error::{Error, Result};
use crate::numeric::Real;

use super::algebra::{grade_of, Form};

/// Polynomial in the ambient coordinates, as `(coefficient, exponents)` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub dim: usize,
    pub terms: Vec<(f64, Vec<u8>)>,
}

impl Poly {
    pub fn constant(dim: usize, v: f64) -> Poly {
        Poly { dim, terms: vec![(v, vec![0; dim])] }
    }

    /// The coordinate function `y^k`.
    pub fn coordinate(dim: usize, k: usize) -> Poly {
        let mut e = vec![0; dim];
        e[k] = 1;
        Poly { dim, terms: vec![(1.0, e)] }
    }

    /// Random homogeneous polynomial of degree `deg` in the variables `vars`, coefficients in `[-1, 1]`.
    pub fn random_homogeneous<R: Rng + ?Sized>(dim: usize, deg: usize, vars: &[usize], rng: &mut R) -> Poly {
        let mut terms = Vec::new();
        let mut exps = vec![0u8; dim];
        monomials(vars, deg, &mut exps, &mut |e| terms.push((rng.gen_range(-1.0..=1.0), e.to_vec())));
        Poly { dim, terms }
    }

    /// Random polynomial of degree at most `deg` in all variables.
    pub fn random<R: Rng + ?Sized>(dim: usize, deg: usize, rng: &mut R) -> Poly {
        let vars: Vec<usize> = (0..dim).collect();
        let mut terms = Vec::new();
        for d in 0..=deg {
            terms.extend(Poly::random_homogeneous(dim, d, &vars, rng).terms);
        }
        Poly { dim, terms }
    }

    pub fn eval<S: Real>(&self, y: &[S]) -> S {
        let mut acc = S::cst(0.0);
        for (c, e) in &self.terms {
            let mut m = S::cst(*c);
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    m = m * y[k].clone();
                }
            }
            acc = acc + m;
        }
        acc
    }
}

fn monomials(vars: &[usize], deg: usize, exps: &mut [u8], out: &mut dyn FnMut(&[u8])) {
    match vars.split_first() {
        None => {
            if deg == 0 {
                out(exps)
            }
        }
        Some((&v, rest)) => {
            for p in 0..=deg {
                exps[v] = p as u8;
                monomials(rest, deg - p, exps, out);
            }
            exps[v] = 0;
        }
    }
}

/// Ambient form field whose coefficients are explicit functions of `y`, so that
/// all of its derivatives are available exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum FormField {
    /// `L(y)^p sum_A P_A(y) dy^A`; the factor is omitted when `factor` is `None`.
    Polynomial {
        dim: usize,
        comps: Vec<(usize, Poly)>,
        factor: Option<(Vec<f64>, f64)>,
    },
    /// `i_D` of the inner field.
    InteriorD(Box<FormField>),
}

impl FormField {
    pub fn polynomial(dim: usize, comps: Vec<(usize, Poly)>) -> FormField {
        FormField::Polynomial { dim, comps, factor: None }
    }

    pub fn scalar(p: Poly) -> FormField {
        FormField::polynomial(p.dim, vec![(0, p)])
    }

    /// Random `degree`-form with polynomial coefficients of degree at most `poly_deg` on every blade.
    pub fn random<R: Rng + ?Sized>(dim: usize, degree: usize, poly_deg: usize, rng: &mut R) -> FormField {
        let comps = (0..1usize << dim).filter(|&m| grade_of(m) == degree).map(|m| (m, Poly::random(dim, poly_deg, rng))).collect();
        FormField::polynomial(dim, comps)
    }

    /// Random `degree`-form homogeneous of weight `r` under dilations (`L_D alpha = r alpha`),
    /// built as `L(y)^p` times homogeneous polynomial coefficients.
    pub fn random_homogeneous<R: Rng + ?Sized>(
        dim: usize,
        degree: usize,
        poly_deg: usize,
        weight: f64,
        linear: Vec<f64>,
        rng: &mut R,
    ) -> FormField {
        let vars: Vec<usize> = (0..dim).collect();
        let comps = (0..1usize << dim)
            .filter(|&m| grade_of(m) == degree)
            .map(|m| (m, Poly::random_homogeneous(dim, poly_deg, &vars, rng)))
            .collect();
        let p = weight - poly_deg as f64 - degree as f64;
        FormField::Polynomial { dim, comps, factor: Some((linear, p)) }
    }

    /// Strongly transverse field of form degree `degree` and weight `weight` for a
    /// section `adsm(kappa)` with `kappa != 0`: `i_D beta`, with `beta` free of the
    /// normal coordinate `s` both in its blades and in its coefficients.
    pub fn strongly_transverse<R: Rng + ?Sized>(
        f: &DefiningFunction,
        degree: usize,
        poly_deg: usize,
        weight: f64,
        rng: &mut R,
    ) -> Result<FormField> {
        let dim = f.dim();
        let coeffs = f.linear_coeffs().ok_or_else(|| Error::Invalid("strongly transverse fields need a linear f".into()))?;
        let support: Vec<usize> = (0..dim).filter(|&k| coeffs[k] != 0.0).collect();
        let &[s] = support.as_slice() else {
            return Err(Error::Invalid("strongly transverse fields need f proportional to one coordinate".into()));
        };
        let (n, n1) = (dim - 2, dim - 1);
        let other = if s == n1 { n } else { n1 };
        let vars: Vec<usize> = (0..dim).filter(|&k| k != s).collect();
        let comps = (0..1usize << dim)
            .filter(|&m| grade_of(m) == degree + 1 && m >> s & 1 == 0)
            .map(|m| (m, Poly::random_homogeneous(dim, poly_deg, &vars, rng)))
            .collect();
        let mut linear = vec![0.0; dim];
        linear[other] = 1.0;
        let p = weight - (degree + 1) as f64 - poly_deg as f64;
        let beta = FormField::Polynomial { dim, comps, factor: Some((linear, p)) };
        Ok(FormField::InteriorD(Box::new(beta)))
    }

    pub fn dim(&self) -> usize {
        match self {
            FormField::Polynomial { dim, .. } => *dim,
            FormField::InteriorD(inner) => inner.dim(),
        }
    }

    /// Form degree, when all components share one.
    pub fn degree(&self) -> Option<usize> {
        match self {
            FormField::Polynomial { comps, .. } => {
                let first = grade_of(comps.first()?.0);
                comps.iter().all(|(m, _)| grade_of(*m) == first).then_some(first)
            }
            FormField::InteriorD(inner) => inner.degree()?.checked_sub(1),
        }
    }

    pub fn eval<S: Real>(&self, y: &[S]) -> Result<Form<S>> {
        match self {
            FormField::Polynomial { dim, comps, factor } => {
                if y.len() != *dim {
                    return Err(Error::Invalid(format!("expected {dim} ambient coordinates, got {}", y.len())));
                }
                let scale = match factor {
                    None => None,
                    Some((l, p)) => {
                        let lin = l.iter().zip(y).fold(S::cst(0.0), |acc, (c, v)| if *c == 0.0 { acc } else { acc + v.clone() * *c });
                        if lin.value() <= 0.0 {
                            return Err(Error::Domain(format!("field factor L(y) = {} is not positive", lin.value())));
                        }
                        Some(lin.powf(*p))
                    }
                };
                let mut out = Form::zeros(*dim);
                for (m, poly) in comps {
                    let v = poly.eval(y);
                    out.add_at(*m, match &scale {
                        Some(s) => v * s.clone(),
                        None => v,
                    });
                }
                Ok(out)
            }
            FormField::InteriorD(inner) => Ok(inner.eval(y)?.interior(y)),
        }
    }
}
