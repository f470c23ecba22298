//! Curvature from the defining function against the Levi-Civita oracle.

use nullcone::curvature::{ambient_curvature, intrinsic_curvature_oracle};
use nullcone::embedding::{Curvature, Flrw, FlrwChart};
use nullcone::scalefactor::parse_scale_factor;

fn main() -> nullcone::Result<()> {
    let x = [1.0, 0.7, 1.2, 0.3];
    let cases = [(Curvature::Flat, "1/t"), (Curvature::Positive, "1"), (Curvature::Negative, "t^2"), (Curvature::Negative, "exp(-t)")];
    for (k, a) in cases {
        let chart = FlrwChart::spherical(Flrw::n4(k, parse_scale_factor(a)?));
        let amb = ambient_curvature(&chart, &x)?;
        let orc = intrinsic_curvature_oracle(&chart, &x)?;
        let gap = amb.riemann.sub(&orc.riemann).norm() / orc.riemann.norm().max(1.0);
        println!(
            "k = {k:>2}, a = {a:<8} R = {:>12.8}  R_oracle = {:>12.8}  |Rm - Rm_oracle| = {gap:.2e}  Weyl defect = {:.1e}",
            amb.scalar,
            orc.scalar,
            amb.weyl_defect()
        );
    }
    Ok(())
}
