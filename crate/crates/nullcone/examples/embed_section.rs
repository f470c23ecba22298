//! Embed FLRW chart points into the null cone and check the section constraints.

use nullcone::embedding::{c_of, induced_metric, ChartMap, Curvature, Flrw, FlrwChart};
use nullcone::scalefactor::parse_scale_factor;

fn main() -> nullcone::Result<()> {
    let x = [0.8, 0.6, 1.1, 0.4];
    for k in Curvature::ALL {
        let flrw = Flrw::n4(k, parse_scale_factor("t^2")?);
        let chart = FlrwChart::spherical(flrw.clone());
        let y = chart.map(&x)?;
        let f = flrw.defining_function().value(&y)?;
        let g = induced_metric(&chart, &x)?;
        let deviation = (&g - chart.closed_form_metric(&x)?).amax();
        println!("k = {k:>2}: y = {y:.5?}");
        println!("        c(y) = {:.2e}, f(y) = {f:.15}, |g - g_closed| = {deviation:.2e}", c_of(&y));
    }
    Ok(())
}
