//! Restriction of ambient operators on forms to an FLRW section.

use nullcone::embedding::{Curvature, Flrw, FlrwChart};
use nullcone::forms::{conformal_scalar_residual, restriction_residual, FormField, Operator};
use nullcone::scalefactor::parse_scale_factor;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> nullcone::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let chart = FlrwChart::spherical(Flrw::n4(Curvature::Flat, parse_scale_factor("t^2")?));
    let x = [1.1, 0.6, 1.0, 0.7];
    for degree in 0..4 {
        let phi = FormField::random(6, degree, 2, &mut rng);
        for op in Operator::ALL {
            let r = restriction_residual(op, &chart, &phi, &x)?;
            println!("degree {degree} {:<6} relative residual {:.2e}", op.name(), r.rel);
        }
    }
    let linear = vec![1.0, 0.0, 0.0, 0.0, 0.2, 0.0];
    let phi = FormField::random_homogeneous(6, 0, 2, -1.0, linear, &mut rng);
    let r = conformal_scalar_residual(&chart, &phi, &x)?;
    println!("conformally coupled scalar: relative residual {:.2e}", r.rel);
    Ok(())
}
