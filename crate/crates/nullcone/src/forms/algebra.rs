use nalgebra::DMatrix;

use crate::numeric::Real;

/// Number of basis vectors in the blade `mask`.
pub fn grade_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Sign of `e^A ^ e^B` relative to the sorted blade `e^{A|B}`; zero when `A` and `B` overlap.
pub fn wedge_sign(a: usize, b: usize) -> f64 {
    if a & b != 0 {
        return 0.0;
    }
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let k = rest.trailing_zeros();
        swaps += (a >> (k + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign picked up when `e_k` is contracted into the first slot of blade `mask`.
fn interior_sign(mask: usize, k: usize) -> f64 {
    if (mask & ((1 << k) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Inhomogeneous differential form at a point, dense over the `2^dim` coordinate blades.
#[derive(Clone, Debug)]
pub struct Form<S> {
    dim: usize,
    c: Vec<S>,
}

impl<S: Real> Form<S> {
    pub fn zeros(dim: usize) -> Self {
        Form { dim, c: vec![S::cst(0.0); 1 << dim] }
    }

    pub fn scalar(dim: usize, v: S) -> Self {
        let mut f = Self::zeros(dim);
        f.c[0] = v;
        f
    }

    /// The blade `dy^A` for the index set `mask`.
    pub fn blade(dim: usize, mask: usize) -> Self {
        let mut f = Self::zeros(dim);
        f.c[mask] = S::cst(1.0);
        f
    }

    /// `sum_a w_a dy^a`.
    pub fn one_form(w: &[S]) -> Self {
        let mut f = Self::zeros(w.len());
        for (a, v) in w.iter().enumerate() {
            f.c[1 << a] = v.clone();
        }
        f
    }

    pub fn from_coeffs(dim: usize, c: Vec<S>) -> Self {
        assert_eq!(c.len(), 1 << dim);
        Form { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[S] {
        &self.c
    }

    pub fn get(&self, mask: usize) -> &S {
        &self.c[mask]
    }

    pub fn set(&mut self, mask: usize, v: S) {
        self.c[mask] = v;
    }

    pub fn add_at(&mut self, mask: usize, v: S) {
        let old = std::mem::replace(&mut self.c[mask], S::cst(0.0));
        self.c[mask] = old + v;
    }

    /// Part of degree `p`.
    pub fn grade(&self, p: usize) -> Self {
        let c = self.c.iter().enumerate().map(|(m, v)| if grade_of(m) == p { v.clone() } else { S::cst(0.0) }).collect();
        Form { dim: self.dim, c }
    }

    /// Degrees with a nonzero coefficient value.
    pub fn degrees(&self) -> Vec<usize> {
        let mut present = vec![false; self.dim + 1];
        for (m, v) in self.c.iter().enumerate() {
            if v.value() != 0.0 {
                present[grade_of(m)] = true;
            }
        }
        (0..=self.dim).filter(|&p| present[p]).collect()
    }

    pub fn zip(&self, o: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.dim, o.dim);
        Form { dim: self.dim, c: self.c.iter().zip(&o.c).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Form { dim: self.dim, c: self.c.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|a| a.clone() * s)
    }

    /// Pointwise product with a function.
    pub fn times(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    /// Multiplies the degree-`p` part by `w(p)`.
    pub fn per_grade(&self, w: impl Fn(usize) -> f64) -> Self {
        let c = self.c.iter().enumerate().map(|(m, v)| v.clone() * w(grade_of(m))).collect();
        Form { dim: self.dim, c }
    }

    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut out = Self::zeros(self.dim);
        for (a, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.c.iter().enumerate() {
                let s = wedge_sign(a, b);
                if s != 0.0 && !(y.is_zero()) {
                    out.add_at(a | b, x.clone() * y.clone() * s);
                }
            }
        }
        out
    }

    /// `j^lambda alpha = lambda ^ alpha` for a covector `lambda`.
    pub fn ext(&self, lambda: &[S]) -> Self {
        Self::one_form(lambda).wedge(self)
    }

    /// Interior product `i_v` with a vector `v` (upper components).
    pub fn interior(&self, v: &[S]) -> Self {
        let mut out = Self::zeros(self.dim);
        for (m, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut rest = m;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.add_at(m & !(1 << k), x.clone() * v[k].clone() * interior_sign(m, k));
            }
        }
        out
    }

    /// Hodge star for a diagonal metric, fixed by `a ^ *b = g~(a, b) omega_g`.
    pub fn star_diag(&self, diag: &[f64]) -> Self {
        assert_eq!(diag.len(), self.dim);
        let full = (1 << self.dim) - 1;
        let vol: f64 = diag.iter().map(|d| d.abs()).product::<f64>().sqrt();
        let mut out = Self::zeros(self.dim);
        for (m, x) in self.c.iter().enumerate() {
            let raise: f64 = (0..self.dim).filter(|k| m >> k & 1 == 1).map(|k| 1.0 / diag[k]).product();
            out.c[full & !m] = x.clone() * (vol * raise * wedge_sign(m, full & !m));
        }
        out
    }

    /// Inverse of [`Form::star_diag`].
    pub fn star_inv_diag(&self, diag: &[f64]) -> Self {
        let s = diag.iter().map(|d| d.signum()).product::<f64>();
        let n = self.dim;
        self.star_diag(diag).per_grade(|q| s * sign_pow(q * (n - q)))
    }

    /// Values of the coefficients.
    pub fn value(&self) -> Form<f64> {
        Form { dim: self.dim, c: self.c.iter().map(|v| v.value()).collect() }
    }
}

pub(crate) fn sign_pow(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Form<f64> {
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Hodge star for a general metric `g`, with orientation given by the coordinate order.
    pub fn star_metric(&self, g: &DMatrix<f64>) -> Form<f64> {
        let n = self.dim;
        assert_eq!(g.nrows(), n);
        let ginv = g.clone().try_inverse().expect("nondegenerate metric");
        let vol = g.determinant().abs().sqrt();
        let full = (1 << n) - 1;
        let mut out = Form::zeros(n);
        for a in 0..1usize << n {
            let rows: Vec<usize> = (0..n).filter(|k| a >> k & 1 == 1).collect();
            let mut raised = 0.0;
            for (c, x) in self.c.iter().enumerate() {
                if *x == 0.0 || grade_of(c) != rows.len() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|k| c >> k & 1 == 1).collect();
                raised += x * DMatrix::from_fn(rows.len(), cols.len(), |i, j| ginv[(rows[i], cols[j])]).determinant();
            }
            out.c[full & !a] = vol * wedge_sign(a, full & !a) * raised;
        }
        out
    }

    pub fn star_inv_metric(&self, g: &DMatrix<f64>) -> Form<f64> {
        let s = g.determinant().signum();
        let n = self.dim;
        self.star_metric(g).per_grade(|q| s * sign_pow(q * (n - q)))
    }

    /// Pullback through a linear map with Jacobian `jac` (`dim x m`).
    pub fn pullback(&self, jac: &DMatrix<f64>) -> Form<f64> {
        assert_eq!(jac.nrows(), self.dim);
        let m = jac.ncols();
        let mut out = Form::zeros(m);
        for (a, x) in self.c.iter().enumerate() {
            if *x == 0.0 {
                continue;
            }
            let rows: Vec<usize> = (0..self.dim).filter(|k| a >> k & 1 == 1).collect();
            if rows.len() > m {
                continue;
            }
            for b in 0..1usize << m {
                if grade_of(b) != rows.len() {
                    continue;
                }
                let cols: Vec<usize> = (0..m).filter(|k| b >> k & 1 == 1).collect();
                let det = DMatrix::from_fn(rows.len(), cols.len(), |i, j| jac[(rows[i], cols[j])]).determinant();
                out.c[b] += x * det;
            }
        }
        out
    }
}
