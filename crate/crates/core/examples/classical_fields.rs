//! Energy and momentum of a classical two-mode field: closed forms against
//! direct integration over one period, in several mode bases.
//!
//! cargo run --example classical_fields

use num_complex::Complex64 as C64;

use jc_freespace::classical_field::{
    basis_change, energy_closed, energy_integrated, momentum_closed, momentum_integrated, sample_fields, BasisAngle,
    ModeAmplitudes, DEFAULT_SAMPLES,
};

fn main() -> jc_freespace::Result<()> {
    let f = ModeAmplitudes::new(C64::new(1.0, 0.5), C64::new(-0.3, 0.8));
    println!("{:>8} {:>14} {:>14} {:>14} {:>14}", "alpha", "E closed", "E integrated", "P closed", "P integrated");
    for alpha in [0.0, 0.2, std::f64::consts::FRAC_PI_4, 1.2] {
        let alpha = BasisAngle::new(alpha);
        let profile = sample_fields(f, alpha, DEFAULT_SAMPLES)?;
        println!(
            "{:8.4} {:14.10} {:14.10} {:14.10} {:14.10}",
            alpha.radians(),
            energy_closed(f),
            energy_integrated(&profile),
            momentum_closed(f, alpha),
            momentum_integrated(&profile)
        );
    }

    // the same physical field expressed in the standing-wave basis
    let g = basis_change(f, BasisAngle::TRAVELING, BasisAngle::STANDING);
    let p_trav = momentum_closed(f, BasisAngle::TRAVELING);
    let p_stand = momentum_closed(g, BasisAngle::STANDING);
    println!("momentum after basis change: {p_trav:.12} -> {p_stand:.12}");
    Ok(())
}
