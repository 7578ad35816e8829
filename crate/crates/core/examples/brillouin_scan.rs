//! Direct diagonalization of the standing-wave model across the Brillouin
//! zone at large detuning, compared with the Hill-equation gap.
//!
//! cargo run --release --example brillouin_scan

use jc_freespace::adiabatic::band_structure;
use jc_freespace::classical_field::BasisAngle;
use jc_freespace::operators::SystemParams;
use jc_freespace::stationary::{brillouin_scan, scan_gaps};

fn main() -> jc_freespace::Result<()> {
    let (xi, delta) = (0.5, 1e4);
    let params = SystemParams::new(100.0, delta, (xi * delta).sqrt(), BasisAngle::STANDING, 1)?;
    let qs: Vec<f64> = (0..=40).map(|k| -1.0 + 0.05 * k as f64).collect();
    // each momentum sector holds two lower-manifold branches
    let scan = brillouin_scan(&params, 12, &qs, 2)?;
    for pt in scan.iter().step_by(5) {
        let e: Vec<String> = pt.energies_rel.iter().map(|e| format!("{e:10.6}")).collect();
        println!("q = {:5.2}: {}", pt.q, e.join(" "));
    }
    let hill = band_structure(xi, 0.0, (-1.5, 2.0), 0.02, 1e-11)?;
    if let (Some((lo, hi)), Some(g)) = (scan_gaps(&scan).first(), hill.gaps.first()) {
        println!("first gap: scan ({lo:.9}, {hi:.9}), Hill ({:.9}, {:.9})", g.lower, g.upper);
    }
    Ok(())
}
