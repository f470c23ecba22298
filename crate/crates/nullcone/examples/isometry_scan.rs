//! Isometry algebras of FLRW sections and the enhanced-symmetry cases.

use nullcone::embedding::{Curvature, Flrw};
use nullcone::isometries::classify_special;
use nullcone::scalefactor::parse_scale_factor;

fn main() -> nullcone::Result<()> {
    let cases = [
        (Curvature::Flat, "t^2", (0.3, 2.0)),
        (Curvature::Flat, "t", (0.3, 2.0)),
        (Curvature::Positive, "1", (-1.0, 1.0)),
        (Curvature::Negative, "csch(t - 0.4)", (0.6, 2.5)),
        (Curvature::Negative, "sech(t)", (-1.0, 1.0)),
        (Curvature::Flat, "1", (-1.0, 1.0)),
    ];
    for (k, a, range) in cases {
        let c = classify_special(&Flrw::n4(k, parse_scale_factor(a)?), range, 42)?;
        let offset = c.offset.map(|t0| format!(", t0 = {t0:.4}")).unwrap_or_default();
        println!("k = {k:>2}, a = {a:<14} dimension {:>2}, {}{offset}", c.dimension, c.case.name());
    }
    Ok(())
}
