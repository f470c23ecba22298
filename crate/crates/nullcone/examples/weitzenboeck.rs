//! Weitzenboeck shift on constant-curvature and FLRW sections.

use nalgebra::DMatrix;
use nullcone::curvature::weitzenboeck_shift;
use nullcone::embedding::{ChartPreset, Curvature, Flrw, FlrwChart, PresetChart};
use nullcone::scalefactor::parse_scale_factor;

fn main() -> nullcone::Result<()> {
    let x = [0.3, 0.2, 0.1, 0.25];
    for preset in [ChartPreset::DsHalf, ChartPreset::Ads, ChartPreset::MinkGlobal] {
        let chart = PresetChart::new(preset, 4);
        let kappa = preset.kappa();
        for degree in 0..=4 {
            let w = weitzenboeck_shift(&chart, degree, &x)?.matrix();
            let a = degree as f64;
            let expected = DMatrix::identity(w.nrows(), w.ncols()) * (a * (4.0 - a) * kappa);
            println!("{:<11} degree {degree}: |W - a(n-a) kappa Id| = {:.1e}", preset.name(), (&w - expected).amax());
        }
    }
    let chart = FlrwChart::spherical(Flrw::n4(Curvature::Flat, parse_scale_factor("t^2")?));
    let w = weitzenboeck_shift(&chart, 1, &[1.0, 0.5, 1.0, 0.5])?.matrix();
    println!("matter-dominated FLRW, 1-forms:\n{w:.4}");
    Ok(())
}
