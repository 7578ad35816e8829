//! Characteristic values of the Mathieu equation and the band edges they
//! imply, next to the Floquet scan of the same (truncated) equation.
//!
//! cargo run --example mathieu_oracle

use jc_freespace::adiabatic::{band_structure_with, characteristic_a, characteristic_b, mathieu_bands, HillForm};

fn main() -> jc_freespace::Result<()> {
    for q in [0.0, 1.0, 5.0] {
        let a: Vec<String> = (0..3).map(|r| format!("{:.8}", characteristic_a(r, q))).collect();
        let b: Vec<String> = (1..4).map(|r| format!("{:.8}", characteristic_b(r, q))).collect();
        println!("q = {q}: a_0..2 = {}, b_1..3 = {}", a.join(" "), b.join(" "));
    }

    let (xi, p) = (0.6, 0.8);
    let oracle = mathieu_bands(xi, p, 3)?;
    println!("xi = {xi}, p = {p}: q_eff = {:.6}, phi = {:.6}", oracle.q_eff, oracle.phi);
    let hi = 8.0;
    let floquet = band_structure_with(HillForm::Mathieu, xi, p, (-1.5, hi), 0.02, 1e-11)?;
    // the last band is clipped by the scan range
    let interior = floquet.edges().into_iter().filter(|&e| e < hi);
    for (k, (o, f)) in oracle.edges.iter().zip(interior).enumerate() {
        println!("  edge {k}: oracle {o:.9}, floquet {f:.9}, diff {:.1e}", (o - f).abs());
    }
    Ok(())
}
