//! Scalar and photon two-point functions on FLRW sections.

use nullcone::embedding::Curvature;
use nullcone::embedding::Flrw;
use nullcone::propagators::{
    field_strength_two_point, field_strength_via_dd, photon_potential_ambient, photon_potential_einstein, pure_gauge_term,
    scalar_two_point,
};
use nullcone::scalefactor::parse_scale_factor;

fn main() -> nullcone::Result<()> {
    let x = [1.0, 0.1, -0.2, 0.3];
    let xp = [1.4, 0.3, 0.2, -0.1];
    for (k, a) in [(Curvature::Negative, "exp(-t)"), (Curvature::Flat, "t^2"), (Curvature::Positive, "csc(t)")] {
        let flrw = Flrw::n4(k, parse_scale_factor(a)?);
        let amb = photon_potential_ambient(&flrw, &x, &xp)?;
        let split = photon_potential_einstein(k, &x, &xp)? + pure_gauge_term(&flrw, &x, &xp)?;
        let closed = field_strength_two_point(k, &x, &xp)?;
        let dd = field_strength_via_dd(&flrw, &x, &xp)?;
        println!("k = {k:>2}, a = {a}");
        println!("  scalar                 {:.10}", scalar_two_point(&flrw, &x, &xp)?);
        println!("  <A A'> - (E + PG)      {:.1e}", (&amb - &split).amax());
        println!("  <F F'>[01][01]         {:.10}", closed.get(0, 1, 0, 1));
        println!("  |closed - dd'<A A'>|   {:.1e}", closed.max_diff(&dd));
    }
    Ok(())
}
