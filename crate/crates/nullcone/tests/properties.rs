//! Randomized invariants across the library.

use nalgebra::DMatrix;
use nullcone::cli::Grid;
use nullcone::curvature::kulkarni_nomizu;
use nullcone::embedding::{c_of, eta_diag, Curvature, Flrw, FlrwChart, ChartMap};
use nullcone::forms::{grade_of, hodge_star, Form};
use nullcone::isometries::ConformalGenerator;
use nullcone::numeric::{gradient, hyperdual_eval, rank_with_tolerance, HyperDual, Real};
use nullcone::propagators::{photon_potential_ambient, photon_potential_einstein, pure_gauge_term, scalar_two_point};
use nullcone::scalefactor::{parse_scale_factor, Preset};
use proptest::prelude::*;

fn curvature() -> impl Strategy<Value = Curvature> {
    prop_oneof![Just(Curvature::Negative), Just(Curvature::Flat), Just(Curvature::Positive)]
}

fn vec6() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, 6)
}

fn eta_dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).zip(eta_diag(6)).map(|((a, b), e)| a * b * e).sum()
}

fn flat(u: &[f64]) -> Vec<f64> {
    u.iter().zip(eta_diag(6)).map(|(a, e)| a * e).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hyperdual_derivatives_match_finite_differences(c in prop::collection::vec(-1.0..1.0f64, 4), x in prop::collection::vec(-0.8..0.8f64, 2)) {
        let f = |v: &[HyperDual]| -> nullcone::Result<HyperDual> {
            let (a, b) = (v[0], v[1]);
            Ok((a * b * c[0] + 1.5).sin() + (a * c[1] - b.sq() * c[2]).exp() + a.sq() * b * c[3])
        };
        let plain = |v: &[f64]| -> nullcone::Result<Vec<f64>> {
            let (a, b) = (v[0], v[1]);
            Ok(vec![(a * b * c[0] + 1.5).sin() + (a * c[1] - b * b * c[2]).exp() + a * a * b * c[3]])
        };
        let (_, g, h) = hyperdual_eval(f, &x).unwrap();
        let fd = gradient(plain, &x).unwrap();
        for i in 0..2 {
            prop_assert!((g[i] - fd[i][0]).abs() < 1e-6 * g[i].abs().max(1.0));
        }
        let grad_fd = gradient(|p| hyperdual_eval(f, p).map(|r| r.1), &x).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((h[(i, j)] - grad_fd[i][j]).abs() < 1e-6 * h[(i, j)].abs().max(1.0));
            }
        }
    }

    #[test]
    fn rank_survives_orthogonal_mixing(seed in 0u64..1000, rank in 1usize..5) {
        use rand::Rng;
        let mut rng = rand_chacha_rng(seed);
        let a = DMatrix::from_fn(6, rank, |_, _| rng.gen_range(-1.0..1.0));
        let b = DMatrix::from_fn(rank, 5, |_, _| rng.gen_range(-1.0..1.0));
        let m = &a * &b;
        let q = DMatrix::from_fn(6, 6, |_, _| rng.gen_range(-1.0..1.0)).qr().q();
        let perm = DMatrix::from_fn(5, 5, |i, j| if (i + 2) % 5 == j { 1.0 } else { 0.0 });
        let r0 = rank_with_tolerance(&m, 1e-10);
        prop_assert_eq!(r0, rank);
        prop_assert_eq!(rank_with_tolerance(&(&q * &m * &perm), 1e-10), r0);
    }

    #[test]
    fn de_sitter_presets_are_conformal_factors(s in 0.05..0.95f64) {
        let cases: [(Preset, fn(f64) -> f64); 3] = [
            (Preset::DsKm1, |t: f64| t.sinh()),
            (Preset::DsK0, |t: f64| t),
            (Preset::DsKp1, |t: f64| t.sin()),
        ];
        for (p, omega) in cases {
            let (lo, hi) = p.sample_domain();
            let t = lo + (hi - lo) * s;
            let a: f64 = p.expr().eval(&t).unwrap();
            prop_assert!((a * omega(t) - 1.0).abs() < 1e-12);
            let (a0, da, _) = p.expr().eval_a(t).unwrap();
            prop_assert!((p.expr().psi_dot(t).unwrap() - da / a0).abs() < 1e-12 * (da / a0).abs().max(1.0));
        }
    }

    #[test]
    fn sections_lie_on_cone_and_level_set(k in curvature(), t in 0.3..2.0f64, chi in 0.1..1.4f64, th in 0.2..2.9f64, ph in 0.0..6.2f64, lambda in prop_oneof![Just(0.5), Just(2.0)]) {
        let flrw = Flrw::n4(k, parse_scale_factor("1 + t^2 / 3").unwrap());
        let y = FlrwChart::spherical(flrw.clone()).map(&[t, chi, th, ph]).unwrap();
        let y2: f64 = y.iter().map(|v| v * v).sum();
        prop_assert!(c_of(&y).abs() < 1e-12 * y2);
        let f = flrw.defining_function();
        prop_assert!((f.value(&y).unwrap() - 1.0).abs() < 1e-10);
        let scaled: Vec<f64> = y.iter().map(|v| v * lambda).collect();
        prop_assert!((f.value(&scaled).unwrap() - lambda).abs() < 1e-10);
    }

    #[test]
    fn interior_and_exterior_anticommute(mask in 0usize..64, u in vec6(), v in vec6()) {
        let a = Form::<f64>::blade(6, mask);
        let (ju, jv) = (flat(&u), flat(&v));
        prop_assert!(a.ext(&ju).ext(&jv).add(&a.ext(&jv).ext(&ju)).max_abs() < 1e-12);
        prop_assert!(a.interior(&u).interior(&v).add(&a.interior(&v).interior(&u)).max_abs() < 1e-12);
        let mixed = a.ext(&jv).interior(&u).add(&a.interior(&u).ext(&jv));
        prop_assert!(mixed.sub(&a.scale(eta_dot(&u, &v))).max_abs() < 1e-12);
    }

    #[test]
    fn springboard_identity(coeffs in prop::collection::vec(-1.0..1.0f64, 64), degree in 0usize..7, u in vec6()) {
        let c: Vec<f64> = coeffs.iter().enumerate().map(|(m, v)| if grade_of(m) == degree { *v } else { 0.0 }).collect();
        let beta = Form::from_coeffs(6, c);
        let sign = if degree % 2 == 0 { -1.0 } else { 1.0 };
        let rhs = hodge_star(&beta).ext(&flat(&u)).star_inv_diag(&eta_diag(6)).scale(sign);
        prop_assert!(beta.interior(&u).sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn kulkarni_nomizu_has_riemann_symmetries(h in prop::collection::vec(-1.0..1.0f64, 16), k in prop::collection::vec(-1.0..1.0f64, 16)) {
        let sym = |v: &[f64]| DMatrix::from_fn(4, 4, |i, j| v[4 * i + j] + v[4 * j + i]);
        let t = kulkarni_nomizu(&sym(&h), &sym(&k));
        prop_assert!(t.riemann_symmetry_defect() < 1e-12);
        let swapped = kulkarni_nomizu(&sym(&k), &sym(&h));
        prop_assert!(t.sub(&swapped).max_abs() < 1e-12);
    }

    #[test]
    fn scalar_two_point_has_weight_minus_two(k in curvature(), lambda in 0.2..5.0f64, seed in 0u64..1000) {
        let (x, xp) = pair(k, seed);
        let a = parse_scale_factor("1 + t^2").unwrap();
        let base = Flrw::n4(k, a.clone());
        let scaled = Flrw::n4(k, a.scaled(lambda));
        if let (Ok(s0), Ok(s1)) = (scalar_two_point(&base, &x, &xp), scalar_two_point(&scaled, &x, &xp)) {
            prop_assert!((s1 * lambda * lambda - s0).abs() < 1e-12 * s0.abs().max(1.0));
        }
    }

    #[test]
    fn potential_splits_into_einstein_and_gauge(k in curvature(), seed in 0u64..1000) {
        let (x, xp) = pair(k, seed);
        let flrw = Flrw::n4(k, parse_scale_factor("2 + sin(t)").unwrap());
        if let Ok(amb) = photon_potential_ambient(&flrw, &x, &xp) {
            let sum = photon_potential_einstein(k, &x, &xp).unwrap() + pure_gauge_term(&flrw, &x, &xp).unwrap();
            prop_assert!((&amb - &sum).amax() < 1e-8 * amb.amax());
        }
    }

    #[test]
    fn generator_flows_preserve_eta(params in prop::collection::vec(-0.5..0.5f64, 15), s in -1.0..1.0f64) {
        let g = ConformalGenerator::from_params(6, params).unwrap();
        let m = g.flow(s);
        let eta = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(eta_diag(6)));
        prop_assert!((m.transpose() * &eta * &m - &eta).amax() < 1e-10);
    }

    #[test]
    fn brackets_satisfy_jacobi(a in prop::collection::vec(-1.0..1.0f64, 15), b in prop::collection::vec(-1.0..1.0f64, 15), c in prop::collection::vec(-1.0..1.0f64, 15)) {
        let (a, b, c) = (
            ConformalGenerator::from_params(6, a).unwrap(),
            ConformalGenerator::from_params(6, b).unwrap(),
            ConformalGenerator::from_params(6, c).unwrap(),
        );
        let jac = a.bracket(&b.bracket(&c)).matrix() + b.bracket(&c.bracket(&a)).matrix() + c.bracket(&a.bracket(&b)).matrix();
        prop_assert!(jac.amax() < 1e-12);
        prop_assert!((a.bracket(&b).matrix() + b.bracket(&a).matrix()).amax() < 1e-14);
    }

    #[test]
    fn grids_include_both_ends(start in -5.0..5.0f64, len in 0.1..5.0f64, count in 2usize..50) {
        let g = Grid::parse(&format!("{start}:{}:{count}", start + len)).unwrap();
        let v = g.values();
        prop_assert_eq!(v.len(), count);
        prop_assert_eq!(v[0], start);
        prop_assert_eq!(v[count - 1], start + len);
        prop_assert!(v.windows(2).all(|w| w[1] > w[0]));
    }
}

fn rand_chacha_rng(seed: u64) -> impl rand::Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// A pair of isotropic-chart points away from each other's light cone.
fn pair(k: Curvature, seed: u64) -> (Vec<f64>, Vec<f64>) {
    use rand::Rng;
    let mut rng = rand_chacha_rng(seed);
    let rmax = if k == Curvature::Positive { 0.5 } else { 1.5 };
    let mut point = || {
        let mut p = vec![rng.gen_range(0.3..1.5)];
        p.extend((0..3).map(|_| rng.gen_range(-rmax..rmax)));
        p
    };
    (point(), point())
}
