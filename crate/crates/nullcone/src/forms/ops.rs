use nalgebra::DMatrix;

use crate::embedding::{eta_diag, DefiningFunction};
use crate::error::{Error, Result};
use crate::numeric::{Jet, JetSpace, Real, MAX_JET_ORDER};

use super::algebra::{sign_pow, Form};
use super::field::FormField;

/// Vector fields on the ambient space that the operators act with.
#[derive(Clone, Debug, PartialEq)]
pub enum VectorField {
    /// `D = y^a d_a`.
    Dilation,
    /// `F = #df`.
    Gradient(DefiningFunction),
    /// `E_f = f F - F^2 D`.
    Ef(DefiningFunction),
    /// `y -> M y`.
    Linear(DMatrix<f64>),
    Constant(Vec<f64>),
}

/// Taylor data of the ambient space around a point `y`: coordinate jets of order 3,
/// enough for every operator of the restriction formulas.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub y: Vec<f64>,
    vars: Vec<Jet>,
    eta: Vec<f64>,
}

impl Ambient {
    pub fn at(y: &[f64]) -> Ambient {
        let space = JetSpace::get(y.len(), MAX_JET_ORDER);
        Ambient { y: y.to_vec(), vars: space.seed(y), eta: eta_diag(y.len()) }
    }

    pub fn dim(&self) -> usize {
        self.y.len()
    }

    pub fn coords(&self) -> &[Jet] {
        &self.vars
    }

    pub fn field(&self, phi: &FormField) -> Result<Form<Jet>> {
        let a = phi.eval(&self.vars)?;
        if a.coeffs().iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("form field is not finite here".into()));
        }
        Ok(a)
    }

    pub fn scalar(&self, f: &DefiningFunction) -> Result<Jet> {
        let v = f.eval(&self.vars)?;
        if !v.is_finite() {
            return Err(Error::Domain("defining function is not finite here".into()));
        }
        Ok(v)
    }

    /// Upper components of a vector field.
    pub fn vector(&self, v: &VectorField) -> Result<Vec<Jet>> {
        Ok(match v {
            VectorField::Dilation => self.vars.clone(),
            VectorField::Gradient(f) => self.sharp(&self.grad(&self.scalar(f)?)),
            VectorField::Ef(f) => {
                let fj = self.scalar(f)?;
                let fv = self.sharp(&self.grad(&fj));
                let f2 = self.dot_up(&fv, &fv);
                fv.iter().zip(&self.vars).map(|(fa, ya)| fj.clone() * fa.clone() - f2.clone() * ya.clone()).collect()
            }
            VectorField::Linear(m) => (0..self.dim())
                .map(|a| (0..self.dim()).fold(Jet::constant(0.0), |acc, b| if m[(a, b)] == 0.0 { acc } else { acc + self.vars[b].clone() * m[(a, b)] }))
                .collect(),
            VectorField::Constant(c) => c.iter().map(|&x| Jet::constant(x)).collect(),
        })
    }

    pub fn grad(&self, s: &Jet) -> Vec<Jet> {
        (0..self.dim()).map(|a| s.derivative(a)).collect()
    }

    pub fn sharp(&self, w: &[Jet]) -> Vec<Jet> {
        w.iter().zip(&self.eta).map(|(x, e)| x.clone() * *e).collect()
    }

    pub fn flat(&self, v: &[Jet]) -> Vec<Jet> {
        self.sharp(v)
    }

    /// `eta(u, v)` for upper components.
    pub fn dot_up(&self, u: &[Jet], v: &[Jet]) -> Jet {
        u.iter().zip(v).zip(&self.eta).fold(Jet::constant(0.0), |acc, ((a, b), e)| acc + a.clone() * b.clone() * *e)
    }

    /// `eta^{ab} d_a d_b s`.
    pub fn box_scalar(&self, s: &Jet) -> Jet {
        (0..self.dim()).fold(Jet::constant(0.0), |acc, a| acc + s.derivative(a).derivative(a) * self.eta[a])
    }

    /// `dc = y_a dy^a`.
    pub fn dc(&self) -> Vec<Jet> {
        self.flat(&self.vars)
    }

    pub fn d(&self, a: &Form<Jet>) -> Form<Jet> {
        let dim = self.dim();
        let mut out = Form::zeros(dim);
        for (m, x) in a.coeffs().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for v in 0..dim {
                if m >> v & 1 == 1 {
                    continue;
                }
                let dx = x.derivative(v);
                if !dx.is_zero() {
                    let s = super::algebra::wedge_sign(1 << v, m);
                    out.add_at(m | 1 << v, dx * s);
                }
            }
        }
        out
    }

    pub fn star(&self, a: &Form<Jet>) -> Form<Jet> {
        a.star_diag(&self.eta)
    }

    pub fn star_inv(&self, a: &Form<Jet>) -> Form<Jet> {
        a.star_inv_diag(&self.eta)
    }

    /// `delta alpha = (-1)^a *^{-1} d * alpha` on each degree `a`.
    pub fn codiff(&self, a: &Form<Jet>) -> Form<Jet> {
        let signed = a.per_grade(sign_pow);
        self.star_inv(&self.d(&self.star(&signed)))
    }

    /// Laplace-de Rham operator `box = -(d delta + delta d)`.
    pub fn box_form(&self, a: &Form<Jet>) -> Form<Jet> {
        self.d(&self.codiff(a)).add(&self.codiff(&self.d(a))).scale(-1.0)
    }

    /// Cartan formula `L_v = d i_v + i_v d`.
    pub fn lie(&self, v: &[Jet], a: &Form<Jet>) -> Form<Jet> {
        self.d(&a.interior(v)).add(&self.d(a).interior(v))
    }

    /// Degree-zero derivation extending a (1,1) tensor: `H_c^b dy^c ^ i_{e_b}`, with `h[c][d] = H_{cd}` both lower.
    pub fn derivation(&self, h: &[Vec<Jet>], a: &Form<Jet>) -> Form<Jet> {
        let dim = self.dim();
        let mut out = Form::zeros(dim);
        for b in 0..dim {
            let mut eb = vec![Jet::constant(0.0); dim];
            eb[b] = Jet::constant(1.0);
            let ia = a.interior(&eb);
            if ia.coeffs().iter().all(|c| c.is_zero()) {
                continue;
            }
            let row: Vec<Jet> = (0..dim).map(|c| h[c][b].clone() * self.eta[b]).collect();
            out = out.add(&ia.ext(&row));
        }
        out
    }

    /// Hessian `d_a d_b f`.
    pub fn hessian(&self, f: &Jet) -> Vec<Vec<Jet>> {
        let g = self.grad(f);
        g.iter().map(|ga| self.grad(ga)).collect()
    }

    /// Schouten operator `S^{df} = L_F - 2 D(grad df)` on ambient forms.
    pub fn schouten(&self, f: &Jet, a: &Form<Jet>) -> Form<Jet> {
        let fv = self.sharp(&self.grad(f));
        self.lie(&fv, a).sub(&self.derivation(&self.hessian(f), a).scale(2.0))
    }

    /// `*^{-1} L_F * - box f`, the second route to `S^{df}`.
    pub fn schouten_via_star(&self, f: &Jet, a: &Form<Jet>) -> Form<Jet> {
        let fv = self.sharp(&self.grad(f));
        self.star_inv(&self.lie(&fv, &self.star(a))).sub(&a.times(&self.box_scalar(f)))
    }
}

/// Projectors `T = i_F i_D j^{df} j^{dc}`, `T_c = j^{df} j^{dc} i_F i_D` and `L = Id - T` at a point.
#[derive(Clone, Debug)]
pub struct Projectors {
    pub d_vec: Vec<f64>,
    pub f_vec: Vec<f64>,
    pub df: Vec<f64>,
    pub dc: Vec<f64>,
}

impl Projectors {
    pub fn new(f: &DefiningFunction, y: &[f64]) -> Result<Projectors> {
        let fv = f.evaluate(y)?;
        let eta = eta_diag(y.len());
        let up = |w: &[f64]| -> Vec<f64> { w.iter().zip(&eta).map(|(a, e)| a * e).collect() };
        Ok(Projectors { d_vec: y.to_vec(), f_vec: up(&fv.grad), df: fv.grad.clone(), dc: up(y) })
    }

    pub fn transverse(&self, a: &Form<f64>) -> Form<f64> {
        a.ext(&self.dc).ext(&self.df).interior(&self.d_vec).interior(&self.f_vec)
    }

    pub fn longitudinal(&self, a: &Form<f64>) -> Form<f64> {
        a.sub(&self.transverse(a))
    }

    pub fn t_c(&self, a: &Form<f64>) -> Form<f64> {
        a.interior(&self.d_vec).interior(&self.f_vec).ext(&self.dc).ext(&self.df)
    }

    /// `e_n = F - (1 + F^2) D / 2` and `e_{n+1} = F + (1 - F^2) D / 2`.
    pub fn normal_frame(&self) -> (Vec<f64>, Vec<f64>) {
        let eta = eta_diag(self.d_vec.len());
        let f2: f64 = self.f_vec.iter().zip(&eta).map(|(x, e)| x * x * e).sum();
        let en = self.f_vec.iter().zip(&self.d_vec).map(|(f, d)| f - 0.5 * (1.0 + f2) * d).collect();
        let en1 = self.f_vec.iter().zip(&self.d_vec).map(|(f, d)| f + 0.5 * (1.0 - f2) * d).collect();
        (en, en1)
    }
}

fn values(a: &Form<Jet>) -> Form<f64> {
    a.value()
}

pub fn exterior_derivative(phi: &FormField, y: &[f64]) -> Result<Form<f64>> {
    let amb = Ambient::at(y);
    Ok(values(&amb.d(&amb.field(phi)?)))
}

pub fn codifferential(phi: &FormField, y: &[f64]) -> Result<Form<f64>> {
    let amb = Ambient::at(y);
    Ok(values(&amb.codiff(&amb.field(phi)?)))
}

pub fn lie_derivative(v: &VectorField, phi: &FormField, y: &[f64]) -> Result<Form<f64>> {
    let amb = Ambient::at(y);
    Ok(values(&amb.lie(&amb.vector(v)?, &amb.field(phi)?)))
}

pub fn laplace_de_rham(phi: &FormField, y: &[f64]) -> Result<Form<f64>> {
    let amb = Ambient::at(y);
    Ok(values(&amb.box_form(&amb.field(phi)?)))
}

/// `S^{df} alpha` by the Hessian route and by the `*^{-1} L_F * - box f` route.
pub fn schouten_df(f: &DefiningFunction, phi: &FormField, y: &[f64]) -> Result<(Form<f64>, Form<f64>)> {
    let amb = Ambient::at(y);
    let fj = amb.scalar(f)?;
    let a = amb.field(phi)?;
    Ok((values(&amb.schouten(&fj, &a)), values(&amb.schouten_via_star(&fj, &a))))
}

/// Ambient Hodge star with respect to `eta`.
pub fn hodge_star(a: &Form<f64>) -> Form<f64> {
    a.star_diag(&eta_diag(a.dim()))
}

/// `(T alpha, L alpha)` at a point of the section, which must satisfy `c = 0` and `f = 1`.
pub fn transverse_project(f: &DefiningFunction, phi: &FormField, y: &[f64]) -> Result<(Form<f64>, Form<f64>)> {
    check_on_section(f, y)?;
    let p = Projectors::new(f, y)?;
    let a = phi.eval(y)?;
    Ok((p.transverse(&a), p.longitudinal(&a)))
}

pub fn check_on_section(f: &DefiningFunction, y: &[f64]) -> Result<()> {
    let c = crate::embedding::c_of(y);
    let scale = y.iter().map(|v| v * v).sum::<f64>().max(1.0);
    if c.abs() > 1e-9 * scale {
        return Err(Error::Constraint(format!("point is off the null cone, c = {c:e}")));
    }
    let fv = f.value(y)?;
    if (fv - 1.0).abs() > 1e-9 {
        return Err(Error::Constraint(format!("point is off the section, f = {fv}")));
    }
    Ok(())
}
