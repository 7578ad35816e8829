//! Band structure of the standing-wave Hill equation from the Floquet
//! discriminant, with the first gap shrinking as the momentum grows.
//!
//! cargo run --example floquet_bands

use jc_freespace::adiabatic::{band_structure, floquet_discriminant, DEFAULT_ODE_TOL};

fn main() -> jc_freespace::Result<()> {
    let xi = 0.5;
    let bs = band_structure(xi, 0.0, (-1.5, 6.0), 0.02, DEFAULT_ODE_TOL)?;
    println!("xi = {xi}, p = 0");
    for b in &bs.bands {
        println!("  band {}: [{:.9}, {:.9}]", b.index, b.lower, b.upper);
    }
    for g in &bs.gaps {
        println!("  gap  {}: width {:.3e}", g.index, g.width);
    }
    println!("  max |Im tr M| = {:.1e}", bs.max_imag_trace);

    println!("first gap width against p:");
    for p in [0.0, 0.5, 1.0, 1.5, 1.8] {
        let bs = band_structure(xi, p, (-1.5, 2.0), 0.02, DEFAULT_ODE_TOL)?;
        println!("  p = {p:3.1}: {:.6}", bs.gaps.first().map_or(0.0, |g| g.width));
    }

    let d = floquet_discriminant(xi, 0.0, 0.5, DEFAULT_ODE_TOL)?;
    println!("D(eps = 0.5) = {:.10} {:+.1e}i", d.re, d.im);
    Ok(())
}
