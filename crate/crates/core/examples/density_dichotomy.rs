//! Reduced center-of-mass density: flat in the traveling-wave basis,
//! modulated with period pi in the standing-wave basis.
//!
//! cargo run --example density_dichotomy

use std::f64::consts::PI;

use jc_freespace::adiabatic::ground_band_state;
use jc_freespace::classical_field::BasisAngle;
use jc_freespace::density::{periodicity, reduced_density, uniformity, DEFAULT_DENSITY_SAMPLES};
use jc_freespace::operators::SystemParams;
use jc_freespace::stationary::{amplitudes_on_grid, solve_joint};

fn main() -> jc_freespace::Result<()> {
    let params = SystemParams::new(100.0, 100.0, 1.0, BasisAngle::TRAVELING, 2)?;
    let space = params.space(0.3, 12)?;
    let ground = solve_joint(&space, &params, 0.3, 1)?.remove(0);
    let flat = reduced_density(&amplitudes_on_grid(&ground, DEFAULT_DENSITY_SAMPLES)?);
    println!("alpha = 0, N = 2: uniformity {:.2e}", uniformity(&flat));

    for xi in [0.1, 0.5, 1.0] {
        let st = ground_band_state(xi, 0.0, DEFAULT_DENSITY_SAMPLES, 1e-11)?;
        let d = reduced_density(&st.amplitudes);
        println!(
            "alpha = pi/4, xi = {xi}: eps = {:.6}, uniformity {:.4}, periodicity(pi) {:.1e}",
            st.eps_rel,
            uniformity(&d),
            periodicity(&d, PI)?
        );
    }
    Ok(())
}
