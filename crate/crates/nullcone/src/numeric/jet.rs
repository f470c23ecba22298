use std::collections::HashMap;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use super::Real;

pub const MAX_JET_VARS: usize = 8;
pub const MAX_JET_ORDER: usize = 3;

type Exponent = [u8; MAX_JET_VARS];

/// Monomial bookkeeping shared by all jets with the same variable count and order.
#[derive(Debug)]
pub struct JetSpace {
    nvars: usize,
    order: usize,
    exps: Vec<Exponent>,
    /// Number of monomials of total degree `<= d`, indexed by `d`.
    upto: Vec<usize>,
    /// `(i, j, k)` with `exps[i] + exps[j] == exps[k]`, sorted by degree of `k`.
    mul: Vec<(u32, u32, u32)>,
    mul_upto: Vec<usize>,
    /// Per variable: `(src, dst, factor)` for differentiating monomial `src`.
    deriv: Vec<Vec<(u32, u32, f64)>>,
    deriv_upto: Vec<Vec<usize>>,
}

fn degree(e: &Exponent) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl JetSpace {
    fn build(nvars: usize, order: usize) -> JetSpace {
        let mut exps: Vec<Exponent> = vec![[0; MAX_JET_VARS]];
        let mut upto = vec![1];
        let mut frontier = vec![[0u8; MAX_JET_VARS]];
        for _ in 1..=order {
            let mut next: Vec<Exponent> = Vec::new();
            for e in &frontier {
                // extend only at or after the last nonzero slot to enumerate each monomial once
                let last = (0..nvars).rev().find(|&v| e[v] > 0).unwrap_or(0);
                for v in last..nvars {
                    let mut f = *e;
                    f[v] += 1;
                    next.push(f);
                }
            }
            exps.extend(next.iter().copied());
            upto.push(exps.len());
            frontier = next;
        }
        let index: HashMap<Exponent, usize> = exps.iter().enumerate().map(|(i, e)| (*e, i)).collect();

        let mut mul = Vec::new();
        for (i, a) in exps.iter().enumerate() {
            for (j, b) in exps.iter().enumerate() {
                if degree(a) + degree(b) > order {
                    continue;
                }
                let mut s = [0u8; MAX_JET_VARS];
                for v in 0..nvars {
                    s[v] = a[v] + b[v];
                }
                mul.push((i as u32, j as u32, index[&s] as u32));
            }
        }
        mul.sort_by_key(|&(_, _, k)| degree(&exps[k as usize]));
        let mul_upto = (0..=order)
            .map(|d| mul.iter().filter(|&&(_, _, k)| degree(&exps[k as usize]) <= d).count())
            .collect();

        let mut deriv = Vec::new();
        let mut deriv_upto = Vec::new();
        for v in 0..nvars {
            let mut tab = Vec::new();
            for (src, e) in exps.iter().enumerate() {
                if e[v] == 0 {
                    continue;
                }
                let mut d = *e;
                d[v] -= 1;
                tab.push((src as u32, index[&d] as u32, e[v] as f64));
            }
            tab.sort_by_key(|&(s, _, _)| degree(&exps[s as usize]));
            let lim = (0..=order)
                .map(|d| tab.iter().filter(|&&(s, _, _)| degree(&exps[s as usize]) <= d).count())
                .collect();
            deriv.push(tab);
            deriv_upto.push(lim);
        }
        JetSpace { nvars, order, exps, upto, mul, mul_upto, deriv, deriv_upto }
    }

    /// Shared space for `nvars` variables truncated at `order`.
    pub fn get(nvars: usize, order: usize) -> &'static JetSpace {
        assert!(nvars <= MAX_JET_VARS && order <= MAX_JET_ORDER, "jet space too large");
        static SPACES: OnceLock<Mutex<Vec<&'static JetSpace>>> = OnceLock::new();
        let mut guard = SPACES.get_or_init(|| Mutex::new(Vec::new())).lock().unwrap();
        if let Some(s) = guard.iter().find(|s| s.nvars == nvars && s.order == order) {
            return s;
        }
        let s: &'static JetSpace = Box::leak(Box::new(JetSpace::build(nvars, order)));
        guard.push(s);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Index of the monomial with the given exponents.
    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.exps.iter().position(|e| e[..self.nvars] == *exps && e[self.nvars..].iter().all(|&x| x == 0))
    }

    /// Jets of the coordinate functions, expanded around `point`.
    pub fn seed(&'static self, point: &[f64]) -> Vec<Jet> {
        assert_eq!(point.len(), self.nvars);
        (0..self.nvars)
            .map(|v| {
                let mut c = vec![0.0; self.len()];
                c[0] = point[v];
                if self.order >= 1 {
                    c[1 + v] = 1.0;
                }
                Jet { space: Some(self), order: self.order as u8, c }
            })
            .collect()
    }
}

/// Truncated multivariate Taylor expansion around a fixed point.
///
/// Coefficient `k` multiplies the monomial `exps[k]` of the displacement. A jet
/// of order `m` is exact through total degree `m`; products and sums truncate to
/// the smaller order and differentiation lowers it by one.
#[derive(Clone, Debug)]
pub struct Jet {
    space: Option<&'static JetSpace>,
    order: u8,
    c: Vec<f64>,
}

const EXACT: u8 = u8::MAX;

impl Jet {
    pub fn constant(v: f64) -> Jet {
        Jet { space: None, order: EXACT, c: vec![v] }
    }

    /// Truncation order; `None` for a constant, which is exact at every order.
    pub fn order(&self) -> Option<usize> {
        self.space.map(|_| self.order as usize)
    }

    /// Taylor coefficient of the monomial with index `k`.
    pub fn coeff(&self, k: usize) -> f64 {
        self.c.get(k).copied().unwrap_or(0.0)
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Jet {
        let Some(sp) = self.space else {
            return Jet::constant(0.0);
        };
        if self.order == 0 {
            panic!("differentiating a jet with no remaining order");
        }
        let mut c = vec![0.0; sp.len()];
        let lim = sp.deriv_upto[v][self.order as usize];
        for &(s, d, k) in &sp.deriv[v][..lim] {
            c[d as usize] += k * self.c[s as usize];
        }
        Jet { space: Some(sp), order: self.order - 1, c }
    }

    fn binary_space(a: &Jet, b: &Jet) -> Option<&'static JetSpace> {
        match (a.space, b.space) {
            (Some(x), Some(y)) => {
                assert!(std::ptr::eq(x, y), "jets from different spaces");
                Some(x)
            }
            (s, None) | (None, s) => s,
        }
    }

    fn truncate(mut self) -> Jet {
        if let Some(sp) = self.space {
            let keep = sp.upto[self.order as usize];
            for x in &mut self.c[keep..] {
                *x = 0.0;
            }
        }
        self
    }

    fn map(mut self, f: impl Fn(f64) -> f64) -> Jet {
        for x in &mut self.c {
            *x = f(*x);
        }
        self
    }

    fn add_ref(&self, b: &Jet, sign: f64) -> Jet {
        match Self::binary_space(self, b) {
            None => Jet::constant(self.c[0] + sign * b.c[0]),
            Some(sp) => {
                let order = self.order.min(b.order);
                let mut c = vec![0.0; sp.len()];
                for (k, x) in c.iter_mut().enumerate() {
                    *x = self.coeff_in(k, sp) + sign * b.coeff_in(k, sp);
                }
                Jet { space: Some(sp), order, c }.truncate()
            }
        }
    }

    fn coeff_in(&self, k: usize, _sp: &JetSpace) -> f64 {
        if self.space.is_none() {
            if k == 0 {
                self.c[0]
            } else {
                0.0
            }
        } else {
            self.c[k]
        }
    }

    fn mul_ref(&self, b: &Jet) -> Jet {
        match (self.space, b.space) {
            (None, None) => Jet::constant(self.c[0] * b.c[0]),
            (None, Some(_)) => b.clone().map(|x| x * self.c[0]),
            (Some(_), None) => self.clone().map(|x| x * b.c[0]),
            (Some(sp), Some(_)) => {
                let sp = Self::binary_space(self, b).unwrap_or(sp);
                let order = self.order.min(b.order);
                let mut c = vec![0.0; sp.len()];
                for &(i, j, k) in &sp.mul[..sp.mul_upto[order as usize]] {
                    c[k as usize] += self.c[i as usize] * b.c[j as usize];
                }
                Jet { space: Some(sp), order, c }
            }
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, b: Jet) -> Jet {
        self.add_ref(&b, 1.0)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, b: Jet) -> Jet {
        self.add_ref(&b, -1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, b: Jet) -> Jet {
        self.mul_ref(&b)
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, b: &Jet) -> Jet {
        self.mul_ref(b)
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, b: &Jet) -> Jet {
        self.add_ref(b, 1.0)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, b: Jet) -> Jet {
        self.mul_ref(&b.recip())
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.map(|x| -x)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, b: f64) -> Jet {
        self.c[0] += b;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, b: f64) -> Jet {
        self.c[0] -= b;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, b: f64) -> Jet {
        self.map(|x| x * b)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, b: f64) -> Jet {
        self.map(|x| x / b)
    }
}

impl Real for Jet {
    fn cst(v: f64) -> Self {
        Jet::constant(v)
    }
    fn value(&self) -> f64 {
        self.c[0]
    }
    fn lift(&self, d: [f64; 4]) -> Self {
        if self.space.is_none() {
            return Jet::constant(d[0]);
        }
        let mut delta = self.clone();
        delta.c[0] = 0.0;
        // g(v + delta) = sum_k g^(k)(v) delta^k / k!
        let mut out = Jet::constant(d[0]);
        let mut power = Jet::constant(1.0);
        let mut fact = 1.0;
        for (k, &dk) in d.iter().enumerate().skip(1).take(self.order as usize) {
            power = power.mul_ref(&delta);
            fact *= k as f64;
            out = out.add_ref(&power.clone().map(|x| x * dk / fact), 1.0);
        }
        let mut out = out;
        out.order = self.order;
        out
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0.0)
    }
    fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }
}
