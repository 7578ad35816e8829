//! Floquet eigenfunctions of the Hill equation and the lower amplitudes
//! they determine.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use super::hill::{band_structure, discriminant, monodromy, quasimomentum, solve_hill, HillCoefficient, HillForm};
use crate::density::SampledAmplitudes;
use crate::error::{invalid, Result};

/// Samples `f(eta_k)`, `eta_k = k period / n`, of a Bloch function
/// `f = e^{i kappa eta} u(eta)` with `u` periodic over `period`.
#[derive(Clone, Debug)]
pub struct BlochSamples {
    pub period: f64,
    pub kappa: f64,
    pub values: Vec<C64>,
}

/// Spectral derivative of a Bloch function.
pub fn bloch_derivative(f: &BlochSamples) -> Vec<C64> {
    let n = f.values.len();
    let h = f.period / n as f64;
    let u: Vec<C64> = f
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| v * C64::from_polar(1.0, -f.kappa * h * k as f64))
        .collect();
    let mut spec = u.clone();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut spec);
    let base = TAU / f.period;
    for (j, c) in spec.iter_mut().enumerate() {
        let wave = if 2 * j < n {
            j as f64
        } else if 2 * j == n {
            0.0
        } else {
            j as f64 - n as f64
        };
        *c *= C64::new(0.0, base * wave) / n as f64;
    }
    planner.plan_fft_inverse(n).process(&mut spec);
    spec.iter()
        .zip(&u)
        .enumerate()
        .map(|(k, (du, u))| (du + u * C64::new(0.0, f.kappa)) * C64::from_polar(1.0, f.kappa * h * k as f64))
        .collect()
}

/// `a_1 = (-i d/deta - p) a_0`.
pub fn a1_from_a0(a0: &BlochSamples, p: f64) -> Vec<C64> {
    bloch_derivative(a0)
        .iter()
        .zip(&a0.values)
        .map(|(d, a)| C64::new(0.0, -1.0) * d - a * p)
        .collect()
}

#[derive(Clone, Debug)]
pub struct FloquetState {
    pub xi: f64,
    pub p: f64,
    pub eps_rel: f64,
    /// Multiplier over one period `pi`: `u(eta + pi) = lambda u(eta)`.
    pub multiplier: C64,
    pub p_quasi: f64,
    /// `a_0`, `a_1` on `[0, 2 pi)`, normalized per period.
    pub amplitudes: SampledAmplitudes,
    /// The gauged solution `u` on the same grid, same scale as `a_0`.
    pub gauged: Vec<C64>,
    /// `a_0'` from the integration, same scale as `a_0`.
    pub da0: Vec<C64>,
}

/// Bloch eigenfunction at `eps_rel`. `multiplier` selects the eigenvalue of
/// the monodromy matrix; pass `None` for `e^{+i pi p_quasi}` from the
/// discriminant, or an exact `+-1` at a band edge.
pub fn floquet_state(
    form: HillForm,
    xi: f64,
    p: f64,
    eps_rel: f64,
    multiplier: Option<C64>,
    n_samples: usize,
    ode_tol: f64,
) -> Result<FloquetState> {
    if n_samples < 16 || n_samples % 2 != 0 {
        return Err(invalid("n_samples", "need an even count of at least 16"));
    }
    let q = HillCoefficient { xi, p, eps_rel, form };
    let m = monodromy(q, ode_tol)?;
    let d = m[0][0] + m[1][1];
    let lambda = multiplier.unwrap_or_else(|| {
        let x = 0.5 * d;
        x + C64::new(0.0, 1.0) * (C64::new(1.0, 0.0) - x * x).sqrt()
    });
    // null vector of M - lambda from its larger row
    let r0 = [m[0][0] - lambda, m[0][1]];
    let r1 = [m[1][0], m[1][1] - lambda];
    let row = if r0[0].norm().hypot(r0[1].norm()) >= r1[0].norm().hypot(r1[1].norm()) { r0 } else { r1 };
    let (c0, c1) = if row[0].norm() + row[1].norm() > 0.0 { (row[1], -row[0]) } else { (C64::new(1.0, 0.0), C64::default()) };

    let eta = SampledAmplitudes::uniform_grid(n_samples);
    let sol = solve_hill(q, c0, c1, &eta, ode_tol)?;
    let (s, c): (Vec<f64>, Vec<f64>) = eta.iter().map(|&t| (2.0 * t).sin_cos()).unzip();
    // undo the gauge: a_0 = u exp(xi/4 cos 2eta)
    let g: Vec<f64> = c.iter().map(|c| (0.25 * xi * c).exp()).collect();
    let mut a0: Vec<C64> = sol.iter().zip(&g).map(|((u, _), g)| u * g).collect();
    let mut da0: Vec<C64> = sol
        .iter()
        .zip(&g)
        .zip(&s)
        .map(|(((u, du), g), s)| (du - u * (0.5 * xi * s)) * g)
        .collect();
    let mut gauged: Vec<C64> = sol.iter().map(|(u, _)| *u).collect();
    let mut a1: Vec<C64> = da0.iter().zip(&a0).map(|(d, a)| C64::new(0.0, -1.0) * d - a * p).collect();

    let n = n_samples as f64;
    let norm = (a0.iter().chain(&a1).map(|v| v.norm_sqr()).sum::<f64>() / n).sqrt();
    for v in a0.iter_mut().chain(a1.iter_mut()).chain(da0.iter_mut()).chain(gauged.iter_mut()) {
        *v /= norm;
    }
    Ok(FloquetState {
        xi,
        p,
        eps_rel,
        multiplier: lambda,
        p_quasi: quasimomentum(d.re),
        amplitudes: SampledAmplitudes { eta, a: vec![a0, a1], b: vec![] },
        gauged,
        da0,
    })
}

/// State at the bottom of the lowest band (`p_quasi = 0`).
pub fn ground_band_state(xi: f64, p: f64, n_samples: usize, ode_tol: f64) -> Result<FloquetState> {
    // the ground band starts below eps = 0 by at most 2 xi + xi^2/4
    let lo = -3.0 * xi.abs() - 1.0;
    let bs = band_structure(xi, p, (lo, 1.0), 0.02, ode_tol)?;
    let bottom = bs
        .bands
        .first()
        .filter(|b| b.lower > lo)
        .ok_or_else(|| invalid("xi", "ground band not resolved below eps = 1"))?
        .lower;
    let d = discriminant(HillCoefficient { xi, p, eps_rel: bottom, form: HillForm::Full }, ode_tol)?;
    floquet_state(HillForm::Full, xi, p, bottom, Some(C64::new(d.re.signum(), 0.0)), n_samples, ode_tol)
}

/// Phase of the multiplier as a Bloch wavenumber over the period `pi`.
pub fn bloch_wavenumber(multiplier: C64) -> f64 {
    multiplier.arg() / PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{periodicity, reduced_density, uniformity};

    #[test]
    fn derivative_of_plane_waves() {
        let n = 64;
        let p = 0.37;
        let eta = SampledAmplitudes::uniform_grid(n);
        let a0 = BlochSamples {
            period: TAU,
            kappa: p + 1.0,
            values: eta.iter().map(|&t| C64::from_polar(1.0, (p + 1.0) * t)).collect(),
        };
        let a1 = a1_from_a0(&a0, p);
        for (x, y) in a1.iter().zip(&a0.values) {
            assert!((x - y).norm() < 1e-12);
        }
        let flat = BlochSamples { period: TAU, kappa: 0.0, values: vec![C64::new(0.3, -0.2); n] };
        assert!(a1_from_a0(&flat, 0.0).iter().all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn derivative_of_band_limited_function() {
        let n = 32;
        let eta = SampledAmplitudes::uniform_grid(n);
        let f = BlochSamples { period: TAU, kappa: 0.0, values: eta.iter().map(|&t| C64::new((3.0 * t).sin(), t.cos())).collect() };
        for (d, t) in bloch_derivative(&f).iter().zip(&eta) {
            assert!((d - C64::new(3.0 * (3.0 * t).cos(), -t.sin())).norm() < 1e-12);
        }
    }

    #[test]
    fn floquet_a1_matches_spectral_route() {
        // a_1 from the integrated derivative vs the spectral derivative
        let (xi, p) = (0.5, 0.0);
        let st = ground_band_state(xi, p, 256, 1e-12).unwrap();
        assert!((st.multiplier - C64::new(1.0, 0.0)).norm() < 1e-15);
        let a0 = BlochSamples { period: TAU, kappa: 0.0, values: st.amplitudes.a[0].clone() };
        let spectral = a1_from_a0(&a0, p);
        let err = spectral.iter().zip(&st.amplitudes.a[1]).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
        assert!((st.amplitudes.period_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interior_bloch_state_has_its_multiplier() {
        let bs = band_structure(0.5, 0.8, (-1.5, 1.0), 0.05, 1e-11).unwrap();
        let ground = &bs.bands[0];
        let eps = 0.5 * (ground.lower + ground.upper);
        let st = floquet_state(HillForm::Full, 0.5, 0.8, eps, None, 128, 1e-12).unwrap();
        assert!(st.p_quasi > 0.2 && st.p_quasi < 0.8);
        assert!((st.multiplier.norm() - 1.0).abs() < 1e-8);
        // u(eta + pi) = lambda u(eta) on the sampled grid
        let half = 64;
        for k in 0..half {
            let d = st.gauged[k + half] - st.multiplier * st.gauged[k];
            assert!(d.norm() < 1e-8);
        }
        let d = reduced_density(&st.amplitudes);
        assert!(periodicity(&d, PI).unwrap() < 1e-8);
    }

    #[test]
    fn density_from_a0_equals_regauged_density() {
        let xi = 0.4;
        let st = ground_band_state(xi, 0.0, 256, 1e-12).unwrap();
        for ((a0, u), t) in st.amplitudes.a[0].iter().zip(&st.gauged).zip(&st.amplitudes.eta) {
            let back = u * (0.25 * xi * (2.0 * t).cos()).exp();
            assert!((a0.norm_sqr() - back.norm_sqr()).abs() < 1e-14);
        }
        let d = reduced_density(&st.amplitudes);
        assert!(uniformity(&d) > 0.01 * xi);
    }

    #[test]
    fn uniformity_grows_with_coupling() {
        let mut prev = 0.0;
        for xi in [0.1, 0.2, 0.3, 0.4, 0.5] {
            let st = ground_band_state(xi, 0.0, 256, 1e-11).unwrap();
            let d = reduced_density(&st.amplitudes);
            assert!(periodicity(&d, PI).unwrap() < 1e-8);
            let u = uniformity(&d);
            assert!(u > prev, "xi {xi}: {u} <= {prev}");
            prev = u;
        }
    }
}
