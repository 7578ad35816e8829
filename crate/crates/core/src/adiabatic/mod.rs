//! Single-excitation regime at large detuning: the excited level is
//! eliminated and the lower amplitudes see the light shift `xi = zeta^2/Delta`.
//!
//! At `alpha = 0` the result is a 2x2 problem with a closed-form spectrum.
//! At `alpha = pi/4` it is a Hill equation with period `pi` whose Floquet
//! discriminant gives the band structure.

mod hill;
mod mathieu;
mod ode;
mod state;
mod traveling;

use serde::{Deserialize, Serialize};

pub use hill::{
    band_structure, band_structure_with, discriminant, floquet_discriminant, hill_coefficient, monodromy,
    quasimomentum, solve_hill, Band, BandStructure, Gap, HillCoefficient, HillForm, DEFAULT_ODE_TOL, EDGE_TOL,
    HILL_PERIOD, IMAG_TRACE_WARN,
};
pub use mathieu::{characteristic_a, characteristic_b, mathieu_bands, MathieuBands, ORACLE_DIM};
pub use ode::Dopri5;
pub use state::{a1_from_a0, bloch_derivative, bloch_wavenumber, floquet_state, ground_band_state, BlochSamples, FloquetState};
pub use traveling::{effective_matrix, spectrum_traveling, traveling_amplitudes, Branch, TravelingAmplitudes};

use crate::error::{invalid, Error, Result};
use crate::operators::SystemParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    pub xi: f64,
    pub p: f64,
    pub eps_rel: f64,
    pub delta: f64,
}

impl EffectiveParams {
    pub fn with_p(self, p: f64) -> Self {
        EffectiveParams { p, ..self }
    }

    pub fn with_eps(self, eps_rel: f64) -> Self {
        EffectiveParams { eps_rel, ..self }
    }

    /// `Delta / max(|eps|, xi)`; elimination needs this to be large.
    pub fn validity_ratio(&self) -> f64 {
        let scale = self.eps_rel.abs().max(self.xi.abs());
        if scale == 0.0 {
            f64::INFINITY
        } else {
            self.delta / scale
        }
    }

    /// Imaginary argument shift of the Mathieu form, `artanh(p/2) / 2`.
    pub fn phi(&self) -> Result<f64> {
        if self.p.abs() >= 2.0 {
            return Err(Error::MathieuDomain { p: self.p });
        }
        Ok(0.5 * (self.p / 2.0).atanh())
    }
}

pub fn adiabatic_eliminate(params: &SystemParams) -> Result<EffectiveParams> {
    if !(params.delta > 0.0) {
        return Err(invalid("Delta", format!("elimination needs Delta > 0, got {}", params.delta)));
    }
    Ok(EffectiveParams { xi: params.zeta * params.zeta / params.delta, p: 0.0, eps_rel: 0.0, delta: params.delta })
}
