//! Reduced center-of-mass density `rho(eta) = sum_m |a_m|^2 + |b_m|^2`
//! (photons traced out) and its uniformity/periodicity diagnostics.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Grid resolution used by the pipelines that produce densities.
pub const DEFAULT_DENSITY_SAMPLES: usize = 512;

/// Amplitudes `a_m(eta)`, `b_m(eta)` sampled on the uniform grid
/// `eta_k = 2 pi k / n`, `k = 0..n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampledAmplitudes {
    pub eta: Vec<f64>,
    pub a: Vec<Vec<C64>>,
    pub b: Vec<Vec<C64>>,
}

impl SampledAmplitudes {
    pub fn uniform_grid(n_samples: usize) -> Vec<f64> {
        (0..n_samples).map(|k| TAU * k as f64 / n_samples as f64).collect()
    }

    /// `sum_m mean_eta (|a_m|^2 + |b_m|^2)`.
    pub fn period_norm(&self) -> f64 {
        let n = self.eta.len() as f64;
        self.a
            .iter()
            .chain(&self.b)
            .map(|c| c.iter().map(|v| v.norm_sqr()).sum::<f64>() / n)
            .sum()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityProfile {
    pub eta: Vec<f64>,
    pub rho: Vec<f64>,
}

impl DensityProfile {
    pub fn mean(&self) -> f64 {
        self.rho.iter().sum::<f64>() / self.rho.len() as f64
    }
}

pub fn reduced_density(amps: &SampledAmplitudes) -> DensityProfile {
    let rho = (0..amps.eta.len())
        .map(|k| amps.a.iter().chain(&amps.b).map(|c| c[k].norm_sqr()).sum())
        .collect();
    DensityProfile { eta: amps.eta.clone(), rho }
}

/// `max |rho - mean(rho)|`.
pub fn uniformity(d: &DensityProfile) -> f64 {
    let mean = d.mean();
    d.rho.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max)
}

/// `max |rho(eta) - rho(eta + period)|`, wrapping around `2 pi`. The period
/// must be a whole number of grid steps.
pub fn periodicity(d: &DensityProfile, period: f64) -> Result<f64> {
    let n = d.rho.len();
    let shift = period / TAU * n as f64;
    let k = shift.round();
    if (shift - k).abs() > 1e-9 * shift.abs().max(1.0) {
        return Err(invalid("period", format!("{period} is not a multiple of the grid step")));
    }
    let k = (k as i64).rem_euclid(n as i64) as usize;
    Ok((0..n).map(|i| (d.rho[i] - d.rho[(i + k) % n]).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn from_fn(n: usize, f: impl Fn(f64) -> C64) -> SampledAmplitudes {
        let eta = SampledAmplitudes::uniform_grid(n);
        let a = vec![eta.iter().map(|&e| f(e)).collect()];
        SampledAmplitudes { eta, a, b: vec![] }
    }

    #[test]
    fn plane_wave_is_uniform() {
        let amps = from_fn(64, |e| C64::from_polar(1.0, 2.3 * e));
        let d = reduced_density(&amps);
        assert!((d.mean() - 1.0).abs() < 1e-14);
        assert!(uniformity(&d) < 1e-14);
        assert!(periodicity(&d, TAU).unwrap() == 0.0);
    }

    #[test]
    fn standing_pattern_has_half_period() {
        let amps = from_fn(128, |e| C64::new(2f64.sqrt() * e.cos(), 0.0));
        let d = reduced_density(&amps);
        assert!((d.mean() - 1.0).abs() < 1e-14);
        assert!((uniformity(&d) - 1.0).abs() < 1e-12);
        assert!(periodicity(&d, PI).unwrap() < 1e-14);
        assert!(periodicity(&d, PI / 2.0).unwrap() > 0.9);
        assert!(periodicity(&d, 1.0).is_err());
    }

    #[test]
    fn upper_level_amplitudes_count() {
        let mut amps = from_fn(32, |_| C64::new(0.6, 0.0));
        amps.b.push(vec![C64::new(0.0, 0.8); 32]);
        let d = reduced_density(&amps);
        assert!((d.mean() - 1.0).abs() < 1e-14);
        assert!((amps.period_norm() - 1.0).abs() < 1e-14);
    }
}
