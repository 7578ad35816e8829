//! Traveling-wave basis (alpha = 0): the full model against the closed
//! (2N+1)-dimensional reduction and the adiabatic two-level formula.
//!
//! cargo run --example traveling_spectrum

use jc_freespace::adiabatic::{spectrum_traveling, traveling_amplitudes, Branch};
use jc_freespace::classical_field::BasisAngle;
use jc_freespace::operators::SystemParams;
use jc_freespace::stationary::{reduce_traveling, solve_joint};

fn main() -> jc_freespace::Result<()> {
    let (zeta, delta) = (1.0, 100.0);
    let xi = zeta * zeta / delta;
    let params = SystemParams::new(100.0, delta, zeta, BasisAngle::TRAVELING, 1)?;
    println!("xi = {xi}");
    println!("{:>6} {:>14} {:>14} {:>14} {:>14}", "p", "full E-", "adiabatic E-", "full E+", "adiabatic E+");
    for k in 0..=8 {
        let p = -1.0 + 0.25 * k as f64;
        let space = params.space(p, 12)?;
        let states = solve_joint(&space, &params, p, 3)?;
        let lower: Vec<f64> = states.iter().filter(|s| s.lower_weight() > 0.5).map(|s| s.energy_rel).collect();
        let closed = reduce_traveling(&params, p)?;
        assert!((closed.energies[0] - states[0].energy_rel).abs() < 1e-9);
        let (em, ep) = spectrum_traveling(xi, p);
        println!("{p:6.2} {:14.8} {em:14.8} {:14.8} {ep:14.8}", lower[0], lower[1]);
    }

    let t = traveling_amplitudes(xi, 0.3, Branch::Minus);
    println!("lower branch at p = 0.3: a0 = {:.6} on k = {}, a1 = {:.6} on k = {}", t.a0, t.k0, t.a1, t.k1);
    Ok(())
}
