use super::*;
use crate::scalefactor::{parse_scale_factor, Preset};

fn flrw(k: Curvature, a: &str) -> Flrw {
    Flrw::n4(k, parse_scale_factor(a).unwrap())
}

fn dim(k: Curvature, a: &str, range: (f64, f64)) -> usize {
    isometry_algebra_dimension(&flrw(k, a), range, DEFAULT_SAMPLES, DEFAULT_TOL, &[1, 2, 3]).unwrap()
}

#[test]
fn generators_are_antisymmetric_and_preserve_eta() {
    let g = ConformalGenerator::from_params(6, (0..15).map(|i| (i as f64 * 0.37).sin()).collect()).unwrap();
    let j = g.matrix();
    assert_eq!(&j + j.transpose(), DMatrix::zeros(6, 6));
    let eta = DMatrix::from_diagonal(&DVector::from_vec(eta_diag(6)));
    for s in [-1.0, -0.3, 0.5, 1.0] {
        let e = g.flow(s);
        assert!((e.transpose() * &eta * &e - &eta).amax() < 1e-10);
    }
    assert_eq!(ConformalGenerator::from_linear_field(&g.linear_field()), g);
    assert!(ConformalGenerator::from_params(6, vec![0.0; 14]).is_err());
}

#[test]
fn generator_action_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rot = ConformalGenerator::plane(6, 1, 2);
    for k in Curvature::ALL {
        let f = flrw(k, "t^2 + 2");
        for y in sample_section(&f, (0.3, 1.4), 5, &mut rng).unwrap() {
            assert!(generator_action(&rot, &f.defining_function(), &y).unwrap().abs() < 1e-12);
        }
    }
    let e = flrw(Curvature::Negative, "1");
    let hyp = ConformalGenerator::plane(6, 4, 5);
    for y in sample_section(&e, (-1.0, 1.0), 5, &mut rng).unwrap() {
        assert!(generator_action(&hyp, &e.defining_function(), &y).unwrap().abs() < 1e-12);
    }
    let m = flrw(Curvature::Flat, "t^2");
    let boost = ConformalGenerator::plane(6, 0, 4);
    let ys = sample_section(&m, (0.5, 2.0), 5, &mut rng).unwrap();
    assert!(ys.iter().any(|y| generator_action(&boost, &m.defining_function(), y).unwrap().abs() > 1e-3));
}

#[test]
fn dimension_counts() {
    assert_eq!(dim(Curvature::Flat, "t^2", (0.3, 2.0)), 6);
    assert_eq!(dim(Curvature::Flat, "t", (0.3, 2.0)), 6);
    assert_eq!(dim(Curvature::Flat, "1 + t^2/3", (0.3, 2.0)), 6);
    assert_eq!(dim(Curvature::Positive, "1", (-1.0, 1.0)), 7);
    assert_eq!(dim(Curvature::Negative, "1", (-1.0, 1.0)), 7);
    for (k, a, r) in [
        (Curvature::Flat, "1/t", (0.3, 2.0)),
        (Curvature::Flat, "1", (-1.0, 1.0)),
        (Curvature::Negative, "exp(-t)", (-1.0, 1.0)),
        (Curvature::Negative, "csch(t)", (0.3, 2.0)),
        (Curvature::Negative, "sech(t)", (-1.0, 1.0)),
        (Curvature::Positive, "csc(t)", (0.3, 2.5)),
    ] {
        assert_eq!(dim(k, a, r), 10, "k={k:?} a={a}");
    }
}

#[test]
fn dimension_is_stable_across_seeds() {
    let seeds: Vec<u64> = (100..110).collect();
    for p in Preset::ALL {
        for &k in p.curvatures() {
            let (lo, hi) = p.sample_domain();
            let f = Flrw::n4(k, p.expr());
            isometry_algebra_dimension(&f, (lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo)), DEFAULT_SAMPLES, DEFAULT_TOL, &seeds)
                .unwrap();
        }
    }
}

#[test]
fn null_space_holds_at_holdout_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (k, a, r) in [(Curvature::Negative, "sech(t)", (-1.0, 1.0)), (Curvature::Flat, "t^2", (0.3, 2.0))] {
        let f = flrw(k, a);
        let alg = isometry_algebra(&f, r, DEFAULT_SAMPLES, DEFAULT_TOL, 5).unwrap();
        assert!(!alg.ill_conditioned);
        let df = f.defining_function();
        for y in sample_section(&f, r, 100, &mut rng).unwrap() {
            for j in &alg.basis {
                let scale = y.iter().map(|v| v.abs()).fold(0.0, f64::max);
                assert!(generator_action(&j.normalized(), &df, &y).unwrap().abs() < 1e-8 * scale.max(1.0));
            }
        }
    }
}

#[test]
fn poincare_algebra() {
    let alg = isometry_algebra(&flrw(Curvature::Flat, "1"), (-1.0, 1.0), DEFAULT_SAMPLES, DEFAULT_TOL, 9).unwrap();
    assert_eq!(alg.dimension, 10);
    for mu in 0..4 {
        assert!(span_residual(&alg.basis, &ConformalGenerator::translation(6, mu)) < 1e-10);
    }
    assert!(closure_defect(&alg.basis) < 1e-10);
}

#[test]
fn classification() {
    let c = classify_special(&flrw(Curvature::Negative, "sech(t)"), (-1.0, 1.0), 1).unwrap();
    assert_eq!((c.case, c.dimension, c.offset), (SpecialCase::AntiDeSitter, 10, None));
    let c = classify_special(&flrw(Curvature::Positive, "1"), (-1.0, 1.0), 1).unwrap();
    assert_eq!((c.case, c.dimension), (SpecialCase::Einstein, 7));
    let c = classify_special(&flrw(Curvature::Flat, "t"), (0.3, 2.0), 1).unwrap();
    assert_eq!((c.case, c.dimension, c.ode), (SpecialCase::Generic, 6, None));
    let c = classify_special(&flrw(Curvature::Flat, "1/t"), (0.3, 2.0), 1).unwrap();
    assert_eq!((c.case, c.dimension, c.offset), (SpecialCase::DeSitter, 10, None));
    let c = classify_special(&flrw(Curvature::Negative, "exp(-t)"), (-1.0, 1.0), 1).unwrap();
    assert_eq!(c.case, SpecialCase::Minkowski);
    let c = classify_special(&flrw(Curvature::Flat, "1"), (-1.0, 1.0), 1).unwrap();
    assert_eq!(c.case, SpecialCase::Minkowski);
}

#[test]
fn offset_de_sitter_sections() {
    let c = classify_special(&flrw(Curvature::Negative, "csch(t - 0.4)"), (0.6, 2.0), 3).unwrap();
    assert_eq!((c.case, c.dimension), (SpecialCase::DeSitter, 10));
    assert!((c.offset.unwrap() - 0.4).abs() < 1e-6);
    let c = classify_special(&flrw(Curvature::Negative, "sech(t - 0.3)"), (-1.0, 1.0), 3).unwrap();
    assert_eq!(c.case, SpecialCase::AntiDeSitter);
    assert!((c.offset.unwrap() - 0.3).abs() < 1e-6);
    let c = classify_special(&flrw(Curvature::Flat, "1/(t + 0.5)"), (0.3, 2.0), 3).unwrap();
    assert_eq!(c.case, SpecialCase::DeSitter);
    assert!((c.offset.unwrap() + 0.5).abs() < 1e-6);
}

#[test]
fn secant_scale_factor_is_de_sitter() {
    // a' - tan(t) a = 0 is solved by sec t, a de Sitter section
    let c = classify_special(&flrw(Curvature::Positive, "1/cos(t)"), (-1.0, 1.0), 4).unwrap();
    assert_eq!((c.case, c.dimension), (SpecialCase::DeSitter, 10));
    assert!((c.offset.unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
    // cos t does not solve it and carries only the minimal isometries
    let c = classify_special(&flrw(Curvature::Positive, "cos(t)"), (-1.0, 1.0), 4).unwrap();
    assert_eq!((c.case, c.dimension), (SpecialCase::Generic, 6));
}

#[test]
fn too_few_samples_is_rejected() {
    let f = flrw(Curvature::Flat, "t^2");
    assert!(matches!(isometry_algebra(&f, (0.3, 2.0), 10, DEFAULT_TOL, 1), Err(Error::Invalid(_))));
}
