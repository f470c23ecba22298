use nalgebra::{DMatrix, DVector};

/// Index-symmetry tag carried by a [`Tensor4`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Riemann,
    KulkarniNomizu,
    None,
}

/// Dense rank-4 tensor over an `n`-dimensional index set, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<f64>,
    pub symmetry: Symmetry,
}

impl Tensor4 {
    pub fn zeros(n: usize, symmetry: Symmetry) -> Self {
        Tensor4 { n, data: vec![0.0; n * n * n * n], symmetry }
    }

    pub fn from_fn(n: usize, symmetry: Symmetry, f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(n, symmetry);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        t.data[((a * n + b) * n + c) * n + d] = f(a, b, c, d);
                    }
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        let n = self.n;
        self.data[((a * n + b) * n + c) * n + d]
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn sub(&self, o: &Tensor4) -> Tensor4 {
        Tensor4 {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(x, y)| x - y).collect(),
            symmetry: Symmetry::None,
        }
    }

    pub fn scaled(&self, s: f64) -> Tensor4 {
        Tensor4 { n: self.n, data: self.data.iter().map(|x| x * s).collect(), symmetry: self.symmetry }
    }

    /// Largest violation of the Riemann symmetries, relative to the largest entry.
    pub fn riemann_symmetry_defect(&self) -> f64 {
        let n = self.n;
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let r = self.get(a, b, c, d);
                        worst = worst
                            .max((r + self.get(b, a, c, d)).abs())
                            .max((r + self.get(a, b, d, c)).abs())
                            .max((r - self.get(c, d, a, b)).abs());
                    }
                }
            }
        }
        worst / scale
    }

    /// Contraction of the first and third slots with the inverse metric `ginv`.
    pub fn contract13(&self, ginv: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |w, v| {
            let mut s = 0.0;
            for x in 0..n {
                for u in 0..n {
                    s += ginv[(x, u)] * self.get(x, w, u, v);
                }
            }
            s
        })
    }
}

/// Number of singular values above `rel_tol` times the largest one.
pub fn rank_with_tolerance(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    if smax == 0.0 || !smax.is_finite() {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Numerical null space of a matrix with at least as many rows as columns.
#[derive(Clone, Debug)]
pub struct NullSpace {
    pub rank: usize,
    /// Orthonormal basis of the null space.
    pub basis: Vec<DVector<f64>>,
    /// Singular values in decreasing order, normalized by the largest.
    pub singular_values: Vec<f64>,
}

impl NullSpace {
    /// Ratio between the smallest retained and the largest discarded singular value.
    pub fn gap(&self) -> f64 {
        let kept = self.singular_values.get(self.rank.wrapping_sub(1)).copied().unwrap_or(1.0);
        let dropped = self.singular_values.get(self.rank).copied().unwrap_or(0.0);
        if dropped == 0.0 {
            f64::INFINITY
        } else {
            kept / dropped
        }
    }
}

/// Null space of `m` by SVD; columns of `m` are the unknowns.
pub fn null_space(m: &DMatrix<f64>, rel_tol: f64) -> NullSpace {
    let cols = m.ncols();
    // pad with zero rows so the thin SVD returns the full right factor
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let smax = svd.singular_values[order[0]];
    let norm = if smax > 0.0 { smax } else { 1.0 };
    let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i] / norm).collect();
    let rank = if smax == 0.0 { 0 } else { singular_values.iter().filter(|&&s| s > rel_tol).count() };
    let basis = order[rank..].iter().map(|&i| v_t.row(i).transpose()).collect();
    NullSpace { rank, basis, singular_values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_zero() {
        assert_eq!(rank_with_tolerance(&DMatrix::identity(5, 5), 1e-8), 5);
        assert_eq!(rank_with_tolerance(&DMatrix::zeros(4, 6), 1e-8), 0);
        assert_eq!(rank_with_tolerance(&DMatrix::zeros(0, 3), 1e-8), 0);
    }

    #[test]
    fn sum_of_two_outer_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut m = DMatrix::zeros(10, 15);
        for _ in 0..2 {
            let u = DVector::from_fn(10, |_, _| rng.gen_range(-1.0..1.0));
            let v = DVector::from_fn(15, |_, _| rng.gen_range(-1.0..1.0));
            m += &u * v.transpose();
        }
        assert_eq!(rank_with_tolerance(&m, 1e-8), 2);
        let ns = null_space(&m, 1e-8);
        assert_eq!(ns.basis.len(), 13);
        for b in &ns.basis {
            assert!((&m * b).norm() < 1e-12);
        }
    }
}
