//! Parse scale factors, evaluate them with derivatives, and inspect the presets.

use nullcone::scalefactor::{parse_scale_factor, Preset};

fn main() -> nullcone::Result<()> {
    for p in Preset::ALL {
        let (lo, hi) = p.sample_domain();
        let t = 0.5 * (lo + hi);
        let (a, da, dda) = p.expr().eval_a(t)?;
        println!("{:<13} a = {:<8} a({t:.3}) = {a:.6}  a' = {da:.6}  a'' = {dda:.6}", p.name(), p.source());
    }
    let a = parse_scale_factor("cosh(t/2)^2 + exp(-t)")?;
    println!("custom: a(1) = {:.6}, psi'(1) = {:.6}", a.eval_a(1.0)?.0, a.psi_dot(1.0)?);
    match parse_scale_factor("2 * sinc(t)") {
        Ok(_) => println!("unexpected parse"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
