use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::embedding::{chart_jet, eta_diag, ChartMap, ChartPreset, Curvature, DefiningFunction, Flrw, FlrwChart, PresetChart};
use crate::numeric::Jet;
use crate::scalefactor::Preset;

const N: usize = 6;

fn random_form(rng: &mut impl Rng, degree: Option<usize>) -> Form<f64> {
    let c = (0..1usize << N)
        .map(|m| if degree.map_or(true, |p| grade_of(m) == p) { rng.gen_range(-1.0..1.0) } else { 0.0 })
        .collect();
    Form::from_coeffs(N, c)
}

fn sections() -> Vec<(FlrwChart, [f64; 4])> {
    vec![
        (FlrwChart::spherical(Flrw::n4(Curvature::Flat, Preset::MatterK0.expr())), [1.1, 0.6, 1.0, 0.7]),
        (FlrwChart::spherical(Flrw::n4(Curvature::Positive, Preset::DsKp1.expr())), [1.2, 0.8, 1.1, 0.4]),
        (FlrwChart::spherical(Flrw::n4(Curvature::Negative, Preset::DsKm1.expr())), [0.9, 0.5, 1.3, 2.0]),
    ]
}

#[test]
fn star_of_one_and_pairings() {
    let one = Form::scalar(N, 1.0);
    let vol = hodge_star(&one);
    assert_eq!(*vol.get((1 << N) - 1), 1.0);
    for (k, sign) in [(0, 1.0), (1, -1.0), (5, 1.0)] {
        let e = Form::<f64>::blade(N, 1 << k);
        let p = e.wedge(&hodge_star(&e));
        assert_eq!(*p.get((1 << N) - 1), sign);
    }
}

#[test]
fn double_star_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for b in 0..=N {
        let beta = random_form(&mut rng, Some(b));
        let twice = hodge_star(&hodge_star(&beta));
        // sgn(eta) = +1 for signature (2, 4) and (n + 1) b = 5 b
        let expect = beta.scale(if (5 * b) % 2 == 0 { 1.0 } else { -1.0 });
        assert!(twice.sub(&expect).max_abs() < 1e-14);
        assert!(beta.star_inv_diag(&eta_diag(N)).sub(&beta.star_metric(&crate::embedding::eta(N)).star_inv_metric(&crate::embedding::eta(N)).star_inv_diag(&eta_diag(N))).max_abs() < 1e-12);
        assert!(hodge_star(&beta).sub(&beta.star_metric(&crate::embedding::eta(N))).max_abs() < 1e-12);
    }
}

#[test]
fn general_metric_star_pairing() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-0.3..0.3));
    let g: DMatrix<f64> = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, -2.0, -0.5])) + &m + m.transpose();
    let ginv = g.clone().try_inverse().unwrap();
    let vol = g.determinant().abs().sqrt();
    for p in 0..=4 {
        let c1: Vec<f64> = (0..16).map(|k| if grade_of(k) == p { rng.gen_range(-1.0..1.0) } else { 0.0 }).collect();
        let c2: Vec<f64> = (0..16).map(|k| if grade_of(k) == p { rng.gen_range(-1.0..1.0) } else { 0.0 }).collect();
        let (a, b) = (Form::from_coeffs(4, c1), Form::from_coeffs(4, c2));
        let top = *a.wedge(&b.star_metric(&g)).get(15);
        // g~(a, b) as the determinant pairing summed over blades
        let mut pair = 0.0;
        for r in 0..16usize {
            for c in 0..16usize {
                if grade_of(r) == p && grade_of(c) == p {
                    let rows: Vec<usize> = (0..4).filter(|k| r >> k & 1 == 1).collect();
                    let cols: Vec<usize> = (0..4).filter(|k| c >> k & 1 == 1).collect();
                    let det = DMatrix::from_fn(p, p, |i, j| ginv[(rows[i], cols[j])]).determinant();
                    pair += a.get(r) * b.get(c) * if p == 0 { 1.0 } else { det };
                }
            }
        }
        assert!((top - pair * vol).abs() < 1e-12, "degree {p}");
        let back = b.star_metric(&g).star_inv_metric(&g);
        assert!(back.sub(&b).max_abs() < 1e-12);
    }
}

#[test]
fn interior_exterior_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let eta = eta_diag(N);
    for _ in 0..200 {
        let a = random_form(&mut rng, None);
        let u: Vec<f64> = (0..N).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..N).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let flat = |w: &[f64]| -> Vec<f64> { w.iter().zip(&eta).map(|(x, e)| x * e).collect() };
        let (ju, jv) = (flat(&u), flat(&v));
        let uv: f64 = u.iter().zip(&v).zip(&eta).map(|((x, y), e)| x * y * e).sum();
        assert!(a.ext(&jv).ext(&ju).add(&a.ext(&ju).ext(&jv)).max_abs() < 1e-12);
        assert!(a.interior(&v).interior(&u).add(&a.interior(&u).interior(&v)).max_abs() < 1e-12);
        let anti = a.ext(&jv).interior(&u).add(&a.interior(&u).ext(&jv));
        assert!(anti.sub(&a.scale(uv)).max_abs() < 1e-12);
        // i^lambda beta = (-1)^{b+1} *^{-1} j^lambda * beta
        for b in 0..=N {
            let beta = a.grade(b);
            let lhs = beta.interior(&u);
            let rhs = hodge_star(&beta).ext(&ju).star_inv_diag(&eta).scale(if b % 2 == 0 { -1.0 } else { 1.0 });
            assert!(lhs.sub(&rhs).max_abs() < 1e-12);
        }
    }
}

#[test]
fn wedge_graded_commutativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for a in 0..=3 {
        for b in 0..=3 {
            let x = random_form(&mut rng, Some(a));
            let y = random_form(&mut rng, Some(b));
            let s = if (a * b) % 2 == 0 { 1.0 } else { -1.0 };
            assert!(x.wedge(&y).sub(&y.wedge(&x).scale(s)).max_abs() < 1e-12);
        }
    }
}

#[test]
fn derivative_examples() {
    let y = [0.3, 0.7, -0.2, 0.5, 1.1, 0.4];
    let field = FormField::polynomial(N, vec![(1 << 1, Poly::coordinate(N, 0))]);
    let d = exterior_derivative(&field, &y).unwrap();
    assert_eq!(*d.get(0b11), 1.0);
    assert_eq!(d.max_abs(), 1.0);

    // delta(dc) = -(n + 2)
    let eta = eta_diag(N);
    let dc = FormField::polynomial(N, (0..N).map(|a| (1 << a, Poly { dim: N, terms: vec![(eta[a], unit_exp(a))] })).collect());
    let delta = codifferential(&dc, &y).unwrap();
    assert!((delta.get(0) + 6.0).abs() < 1e-12);

    // L_D dy^a = dy^a
    for a in 0..N {
        let dya = FormField::polynomial(N, vec![(1 << a, Poly::constant(N, 1.0))]);
        let l = lie_derivative(&VectorField::Dilation, &dya, &y).unwrap();
        assert!(l.sub(&Form::blade(N, 1 << a)).max_abs() < 1e-14);
    }
}

fn unit_exp(a: usize) -> Vec<u8> {
    let mut e = vec![0; N];
    e[a] = 1;
    e
}

#[test]
fn dilation_measures_homogeneity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let y = [0.3, 0.7, -0.2, 0.5, 1.1, 0.4];
    for degree in 0..3 {
        let r = -1.5 + degree as f64;
        let phi = FormField::random_homogeneous(N, degree, 2, r, vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0], &mut rng);
        let l = lie_derivative(&VectorField::Dilation, &phi, &y).unwrap();
        let v = phi.eval(&y).unwrap();
        assert!(l.sub(&v.scale(r)).max_abs() < 1e-11 * v.max_abs().max(1.0));
    }
}

#[test]
fn d_squared_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let y = [0.3, 0.7, -0.2, 0.5, 1.1, 0.4];
    let amb = Ambient::at(&y);
    for degree in 0..4 {
        let phi = FormField::random(N, degree, 3, &mut rng);
        let a = amb.field(&phi).unwrap();
        assert!(amb.d(&amb.d(&a)).value().max_abs() < 1e-9);
        let delta2 = amb.codiff(&amb.codiff(&a)).value();
        assert!(delta2.max_abs() < 1e-9);
    }
}

#[test]
fn schouten_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let flat = Flrw::n4(Curvature::Flat, Preset::MatterK0.expr());
    let f = flat.defining_function();
    let y = crate::embedding::embed_point(Curvature::Flat, &flat.a, &crate::embedding::ChartPoint::n4(Curvature::Flat, 1.3, 0.4)).unwrap();
    for degree in 0..4 {
        let phi = FormField::random(N, degree, 2, &mut rng);
        let (a, b) = schouten_df(&f, &phi, &y).unwrap();
        assert!(a.sub(&b).max_abs() < 1e-9 * a.max_abs().max(1.0), "degree {degree}");
    }
    // linear f: S^{df} = L_F
    let lin = DefiningFunction::adsm(1.0, 4);
    let phi = FormField::random(N, 2, 2, &mut rng);
    let (s, _) = schouten_df(&lin, &phi, &y).unwrap();
    let grad = lin.evaluate(&y).unwrap().grad;
    let fvec: Vec<f64> = grad.iter().zip(eta_diag(N)).map(|(g, e)| g * e).collect();
    let l = lie_derivative(&VectorField::Constant(fvec), &phi, &y).unwrap();
    assert!(s.sub(&l).max_abs() < 1e-12);
}

#[test]
fn schouten_of_c_is_dilation_minus_twice_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let y = [0.3, 0.7, -0.2, 0.5, 1.1, 0.4];
    let amb = Ambient::at(&y);
    let c = crate::embedding::c_of(amb.coords());
    for b in 0..4 {
        let phi = FormField::random(N, b, 2, &mut rng);
        let a = amb.field(&phi).unwrap();
        let s = amb.schouten(&c, &a).value();
        let d = amb.lie(amb.coords(), &a).value().sub(&a.value().scale(2.0 * b as f64));
        assert!(s.sub(&d).max_abs() < 1e-10);
        let s2 = amb.schouten_via_star(&c, &a).value();
        assert!(s2.sub(&d).max_abs() < 1e-10);
    }
}

#[test]
fn vector_field_identities() {
    for (chart, x) in sections() {
        let f = chart.defining_function();
        let y = chart.map(&x).unwrap();
        let amb = Ambient::at(&y);
        let fj = amb.scalar(&f).unwrap();
        let fv = amb.vector(&VectorField::Gradient(f.clone())).unwrap();
        let dv = amb.vector(&VectorField::Dilation).unwrap();
        let ev = amb.vector(&VectorField::Ef(f.clone())).unwrap();
        let apply = |v: &[Jet], s: &Jet| v.iter().enumerate().fold(Jet::constant(0.0), |acc, (k, vk)| acc + vk.clone() * s.derivative(k));
        let c = crate::embedding::c_of(amb.coords());
        let f2 = amb.dot_up(&fv, &fv);
        let close = |a: f64, b: f64| assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        use crate::numeric::Real;
        close(apply(&dv, &fj).value(), 1.0);
        close(apply(&fv, &c).value(), 1.0);
        close(amb.dot_up(&dv, &fv).value(), 1.0);
        close(apply(&dv, &c).value(), 0.0);
        close(apply(&fv, &fj).value(), f2.value());
        close(apply(&dv, &f2).value(), 0.0);
        close(amb.dot_up(&ev, &fv).value(), 0.0);
        // [D, F] = -F and [D, E_f] = 0, componentwise
        for k in 0..N {
            let bracket = |u: &[Jet], w: &[Jet]| (apply(u, &w[k]) - apply(w, &u[k])).value();
            close(bracket(&dv, &fv), -fv[k].value());
            close(bracket(&dv, &ev), 0.0);
        }
    }
}

#[test]
fn projector_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (chart, x) in sections() {
        let f = chart.defining_function();
        let jet = chart_jet(&chart, &x).unwrap();
        let p = Projectors::new(&f, &jet.y).unwrap();
        let (en, en1) = p.normal_frame();
        let eta = eta_diag(N);
        let dot = |u: &[f64], v: &[f64]| -> f64 { (0..N).map(|k| u[k] * v[k] * eta[k]).sum() };
        assert!((dot(&en, &en) + 1.0).abs() < 1e-10);
        assert!((dot(&en1, &en1) - 1.0).abs() < 1e-10);
        assert!(dot(&en, &en1).abs() < 1e-10);
        for _ in 0..10 {
            let a = random_form(&mut rng, None);
            let t = p.transverse(&a);
            assert!(p.transverse(&t).sub(&t).max_abs() < 1e-9);
            let tc = p.t_c(&a);
            assert!(p.t_c(&tc).sub(&tc).max_abs() < 1e-9);
            assert!(p.transverse(&tc).max_abs() < 1e-9 && p.t_c(&t).max_abs() < 1e-9);
            assert!(t.interior(&p.d_vec).max_abs() < 1e-9 && t.interior(&p.f_vec).max_abs() < 1e-9);
            assert!(t.add(&p.longitudinal(&a)).sub(&a).max_abs() < 1e-14);
            assert!(a.pullback(&jet.jac).sub(&t.pullback(&jet.jac)).max_abs() < 1e-9);
            // i_n i_{n+1} = i_F i_D and j^n j^{n+1} = -j^{df} j^{dc}
            let lower = |v: &[f64]| -> Vec<f64> { v.iter().zip(&eta).map(|(x, e)| x * e).collect() };
            let lhs = a.interior(&en1).interior(&en);
            let rhs = a.interior(&p.d_vec).interior(&p.f_vec);
            assert!(lhs.sub(&rhs).max_abs() < 1e-9);
            let (cn, cn1) = (lower(&en).iter().map(|v| -v).collect::<Vec<_>>(), lower(&en1));
            let lhs = a.ext(&cn1).ext(&cn);
            let rhs = a.ext(&p.dc).ext(&p.df).scale(-1.0);
            assert!(lhs.sub(&rhs).max_abs() < 1e-9);
        }
        let dfa = Form::one_form(&p.df);
        assert!(p.transverse(&dfa).max_abs() < 1e-10);
    }
}

#[test]
fn chart_orientation_matches_ambient() {
    // the flat embedding reverses the chart orientation, the curved ones keep it
    for ((chart, x), expect) in sections().into_iter().zip([-1.0, 1.0, 1.0]) {
        let f = chart.defining_function();
        let jet = chart_jet(&chart, &x).unwrap();
        let p = Projectors::new(&f, &jet.y).unwrap();
        let one = pulled_vol(&jet.jac, &p);
        let omega = jet.metric().determinant().abs().sqrt();
        let sigma = orientation_sign(&chart, &x).unwrap();
        assert_eq!(sigma, expect);
        assert!((one - sigma * omega).abs() < 1e-10 * omega, "{one} vs {omega}");
    }
}

fn pulled_vol(jac: &DMatrix<f64>, p: &Projectors) -> f64 {
    // *_f 1 = m^*(i_{n+1} i_n *_eta 1)
    let (en, en1) = p.normal_frame();
    let vol = hodge_star(&Form::scalar(N, 1.0));
    *vol.interior(&en).interior(&en1).pullback(jac).get(15)
}

#[test]
fn restriction_d_and_star() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (chart, x) in sections() {
        for degree in 0..4 {
            let phi = FormField::random(N, degree, 2, &mut rng);
            for op in [Operator::D, Operator::Star] {
                let r = restriction_residual(op, &chart, &phi, &x).unwrap();
                assert!(r.rel < 1e-7, "{op:?} degree {degree}: {}", r.rel);
            }
        }
    }
}

#[test]
fn restriction_delta_and_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (chart, x) in sections() {
        for degree in 0..4 {
            let phi = FormField::random(N, degree, 2, &mut rng);
            for op in [Operator::Delta, Operator::Box] {
                let r = restriction_residual(op, &chart, &phi, &x).unwrap();
                assert!(r.rel < 1e-6, "{op:?} degree {degree}: {} (lhs {:?})", r.rel, r.lhs.max_abs());
            }
        }
    }
}

#[test]
fn conformal_scalar() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (chart, x) in sections() {
        let phi = FormField::random_homogeneous(N, 0, 2, -1.0, vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0], &mut rng);
        let r = conformal_scalar_residual(&chart, &phi, &x).unwrap();
        assert!(r.rel < 1e-6, "{}", r.rel);
    }
}

#[test]
fn strongly_transverse_delta_on_linear_sections() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (preset, x) in [(ChartPreset::DsHalf, [0.2, 0.1, -0.3, 0.25]), (ChartPreset::Ads, [0.2, 0.1, -0.3, 0.25])] {
        let chart = PresetChart::new(preset, 4);
        let f = chart.defining_function();
        for degree in 0..3 {
            let phi = FormField::strongly_transverse(&f, degree, 2, 0.0, &mut rng).unwrap();
            let y = chart.map(&x).unwrap();
            let amb = Ambient::at(&y);
            let a = amb.field(&phi).unwrap();
            let fv = amb.vector(&VectorField::Gradient(f.clone())).unwrap();
            use crate::numeric::Real;
            assert!(a.interior(amb.coords()).value().max_abs() < 1e-12);
            assert!(a.interior(&fv).value().max_abs() < 1e-12);
            assert!(amb.lie(&fv, &a).value().max_abs() < 1e-12);
            assert!(amb.lie(amb.coords(), &a).value().max_abs() < 1e-12);
            let _ = fv[0].value();
            let phi_f = pulled_field(&chart, &phi);
            let lhs = amb.codiff(&a).value().pullback(&chart_jet(&chart, &x).unwrap().jac);
            let rhs = intrinsic_delta(&chart, phi_f)(&x).unwrap();
            assert!(lhs.sub(&rhs).max_abs() < 1e-6 * lhs.max_abs().max(1.0));
        }
    }
}

#[test]
fn hessian_restriction() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (chart, x) in sections() {
        let (l, r) = hessian_restriction_residual(&chart, &FormField::random(N, 0, 3, &mut rng), &x).unwrap();
        assert!((&l - &r).amax() < 1e-6 * l.amax().max(1.0), "{}", (&l - &r).amax());
        let c = FormField::scalar(Poly {
            dim: N,
            terms: (0..N).map(|a| (0.5 * eta_diag(N)[a], { let mut e = vec![0; N]; e[a] = 2; e })).collect(),
        });
        let (l, r) = hessian_restriction_residual(&chart, &c, &x).unwrap();
        let g = chart_jet(&chart, &x).unwrap().metric();
        assert!((&l - &g).amax() < 1e-10 && (&l - &r).amax() < 1e-6);
    }
}
