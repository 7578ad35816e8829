//! Builds the truncated Hamiltonian and momentum operators and prints the
//! interior norms of all pairwise commutators of H, P, N and T.
//!
//! cargo run --example commuting_set

use jc_freespace::classical_field::BasisAngle;
use jc_freespace::operators::{commuting_set_defects, SystemParams};

fn main() -> jc_freespace::Result<()> {
    for alpha in [0.0, 0.3, std::f64::consts::FRAC_PI_4] {
        let params = SystemParams::new(100.0, 10.0, 2.0, BasisAngle::new(alpha), 2)?;
        let space = params.space(0.37, 12)?;
        println!("alpha = {alpha:.4}, basis dimension {}", space.dim());
        for (name, norm) in commuting_set_defects(&space, &params) {
            println!("  {name:8} {norm:.2e}");
        }
    }
    Ok(())
}
