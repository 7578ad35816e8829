//! Classical monochromatic field in an arbitrary two-mode basis.
//!
//! The two basis modes are rotations of the counter-propagating plane waves
//!
//! ```text
//! chi_1(z) =  cos(alpha) e^{ikz} + sin(alpha) e^{-ikz}
//! chi_2(z) = -sin(alpha) e^{ikz} + cos(alpha) e^{-ikz}
//! ```
//!
//! Units: `k = 1`, `c = 1`, `z` in units of `1/k`. Energies are reported in
//! units of `2 eps_0` and momenta in units of `2 eps_0 / c`, per unit length.
//! Fields are complex spatial amplitudes (the `e^{-i omega t}` envelope).
//!
//! `B` is stored as its component along `e x e_z`, where `e` is the
//! polarization unit vector, so that the momentum density along `e_z` is
//! `-Re(E B*)` in the units above.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Minimum number of sampling intervals per period.
pub const MIN_SAMPLES: usize = 64;
pub const DEFAULT_SAMPLES: usize = 256;

/// Second-quantization basis angle, stored reduced to `[0, pi/2)`.
///
/// A quarter turn maps `(chi_1, chi_2) -> (chi_2, -chi_1)`, so angles that
/// differ by `pi/2` describe the same pair of modes up to relabeling. Use
/// [`BasisAngle::canonicalize`] when amplitudes given in the unreduced basis
/// must be carried along.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisAngle(f64);

impl BasisAngle {
    pub const TRAVELING: BasisAngle = BasisAngle(0.0);
    pub const STANDING: BasisAngle = BasisAngle(std::f64::consts::FRAC_PI_4);

    pub fn new(alpha: f64) -> Self {
        let r = alpha.rem_euclid(FRAC_PI_2);
        // rem_euclid can round up to the modulus itself
        BasisAngle(if r >= FRAC_PI_2 { 0.0 } else { r })
    }

    /// Reduces `alpha` and re-expresses `f` (given in the `alpha` basis) in
    /// the reduced basis.
    pub fn canonicalize(alpha: f64, f: ModeAmplitudes) -> (Self, ModeAmplitudes) {
        let turns = (alpha / FRAC_PI_2).floor() as i64;
        let reduced = BasisAngle::new(alpha);
        let mut g = f;
        // chi'_1 = chi_2, chi'_2 = -chi_1 per quarter turn
        for _ in 0..turns.rem_euclid(4) {
            g = ModeAmplitudes::new(-g.f2, g.f1);
        }
        (reduced, g)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn cos2(self) -> f64 {
        (2.0 * self.0).cos()
    }

    pub fn sin2(self) -> f64 {
        (2.0 * self.0).sin()
    }
}

impl Default for BasisAngle {
    fn default() -> Self {
        BasisAngle::TRAVELING
    }
}

/// Complex amplitudes `(f1, f2)` of the field `E(z) = f1 chi_1 + f2 chi_2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeAmplitudes {
    pub f1: C64,
    pub f2: C64,
}

impl ModeAmplitudes {
    pub fn new(f1: C64, f2: C64) -> Self {
        ModeAmplitudes { f1, f2 }
    }

    pub fn real(f1: f64, f2: f64) -> Self {
        ModeAmplitudes::new(C64::new(f1, 0.0), C64::new(f2, 0.0))
    }

    pub fn zero() -> Self {
        ModeAmplitudes::real(0.0, 0.0)
    }

    /// Plane-wave coefficients `(g+, g-)` of `E(z) = g+ e^{iz} + g- e^{-iz}`.
    pub fn plane_wave(self, alpha: BasisAngle) -> (C64, C64) {
        let r = mode_pair(alpha);
        (
            self.f1 * r[0][0] + self.f2 * r[1][0],
            self.f1 * r[0][1] + self.f2 * r[1][1],
        )
    }
}

/// Rotation `R(alpha)`: row `i` holds the coefficients of `chi_{i+1}` over
/// `(e^{ikz}, e^{-ikz})`.
pub fn mode_pair(alpha: BasisAngle) -> [[f64; 2]; 2] {
    let (s, c) = alpha.radians().sin_cos();
    [[c, s], [-s, c]]
}

/// Sampled `E(z)` and `B(z)` over one period, endpoint included.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldProfile {
    z: Vec<f64>,
    e: Vec<C64>,
    b: Vec<C64>,
}

impl FieldProfile {
    /// Validates a sample set: uniform grid spanning exactly one period
    /// (`2 pi`), at least [`MIN_SAMPLES`] intervals, endpoint matching the
    /// start point for both fields.
    pub fn from_samples(z: Vec<f64>, e: Vec<C64>, b: Vec<C64>) -> Result<Self> {
        if z.len() != e.len() || z.len() != b.len() {
            return Err(invalid("samples", "z, E and B must have equal length"));
        }
        if z.len() < MIN_SAMPLES + 1 {
            return Err(Error::Undersampled { given: z.len().saturating_sub(1), required: MIN_SAMPLES });
        }
        let n = z.len() - 1;
        let span = z[n] - z[0];
        if (span - TAU).abs() > 1e-9 {
            return Err(invalid("z", format!("grid spans {span}, expected one period 2*pi")));
        }
        let h = span / n as f64;
        if z.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0)) {
            return Err(invalid("z", "grid is not uniform"));
        }
        let scale = e.iter().chain(&b).map(|v| v.norm()).fold(1.0, f64::max);
        let mismatch = (e[n] - e[0]).norm().max((b[n] - b[0]).norm());
        if mismatch > 1e-9 * scale {
            return Err(Error::NotPeriodic { mismatch });
        }
        Ok(FieldProfile { z, e, b })
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn e(&self) -> &[C64] {
        &self.e
    }

    pub fn b(&self) -> &[C64] {
        &self.b
    }

    fn period_mean(&self, density: impl Fn(C64, C64) -> f64) -> f64 {
        let n = self.z.len() - 1;
        let h = (self.z[n] - self.z[0]) / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            acc += 0.5 * h * (density(self.e[i], self.b[i]) + density(self.e[i + 1], self.b[i + 1]));
        }
        acc / TAU
    }
}

/// Samples the field of `f` in the `alpha` basis with `n_samples` intervals.
pub fn sample_fields(f: ModeAmplitudes, alpha: BasisAngle, n_samples: usize) -> Result<FieldProfile> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::Undersampled { given: n_samples, required: MIN_SAMPLES });
    }
    let (gp, gm) = f.plane_wave(alpha);
    let h = TAU / n_samples as f64;
    let z: Vec<f64> = (0..=n_samples).map(|i| i as f64 * h).collect();
    let mut e = Vec::with_capacity(z.len());
    let mut b = Vec::with_capacity(z.len());
    for &zi in &z {
        let fwd = C64::from_polar(1.0, zi);
        let bwd = fwd.conj();
        e.push(gp * fwd + gm * bwd);
        // B = (1/i omega) dE/dz along -(e x e_z)
        b.push(-gp * fwd + gm * bwd);
    }
    FieldProfile::from_samples(z, e, b)
}

pub fn assemble_fields(f: ModeAmplitudes, alpha: BasisAngle) -> FieldProfile {
    sample_fields(f, alpha, DEFAULT_SAMPLES).expect("default grid is valid")
}

/// `f1* f1 + f2* f2`.
pub fn energy_closed(f: ModeAmplitudes) -> f64 {
    f.f1.norm_sqr() + f.f2.norm_sqr()
}

/// `cos 2a (|f1|^2 - |f2|^2) - sin 2a (f1* f2 + f2* f1)`.
pub fn momentum_closed(f: ModeAmplitudes, alpha: BasisAngle) -> f64 {
    let cross = f.f1.conj() * f.f2 + f.f2.conj() * f.f1;
    alpha.cos2() * (f.f1.norm_sqr() - f.f2.norm_sqr()) - alpha.sin2() * cross.re
}

/// Period average of `(|E|^2 + |B|^2) / 2`.
pub fn energy_integrated(profile: &FieldProfile) -> f64 {
    profile.period_mean(|e, b| 0.5 * (e.norm_sqr() + b.norm_sqr()))
}

/// Period average of the Poynting momentum density `-Re(E B*)`.
pub fn momentum_integrated(profile: &FieldProfile) -> f64 {
    profile.period_mean(|e, b| -(e * b.conj()).re)
}

/// Re-expresses the same physical field in another basis.
pub fn basis_change(f: ModeAmplitudes, from: BasisAngle, to: BasisAngle) -> ModeAmplitudes {
    let (gp, gm) = f.plane_wave(from);
    let r = mode_pair(to);
    ModeAmplitudes::new(r[0][0] * gp + r[0][1] * gm, r[1][0] * gp + r[1][1] * gm)
}
