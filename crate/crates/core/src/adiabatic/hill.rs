//! Hill equation `u'' + Q(eta) u = 0` for the gauged lower amplitude at
//! `alpha = pi/4`, `N = 1`, and its Floquet band structure.
//!
//! Eliminating `a_1` leaves
//! `a_0'' + xi sin 2eta a_0' + (eps + xi(1 - cos 2eta - i p sin 2eta)) a_0 = 0`.
//! The substitution `a_0 = u exp(xi/4 cos 2eta)` removes the first-derivative
//! term and gives
//! `Q = eps + xi(1 - 2 cos 2eta - i p sin 2eta) - (xi^2/4) sin^2 2eta`.
//! Dropping the last term gives a Mathieu equation with a shifted argument.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ode::Dopri5;
use crate::error::{invalid, Result};

/// Period of `Q` in `eta`.
pub const HILL_PERIOD: f64 = PI;

/// Band edges are refined to this width in `eps`.
pub const EDGE_TOL: f64 = 1e-9;

/// Default per-step tolerance of the monodromy integration.
pub const DEFAULT_ODE_TOL: f64 = 1e-10;

/// Above this `|Im tr M|` the band condition on `Re tr M` is suspect.
pub const IMAG_TRACE_WARN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HillForm {
    /// Including `-(xi^2/4) sin^2 2eta`.
    Full,
    /// Without the `xi^2` term.
    Mathieu,
}

#[derive(Clone, Copy, Debug)]
pub struct HillCoefficient {
    pub xi: f64,
    pub p: f64,
    pub eps_rel: f64,
    pub form: HillForm,
}

impl HillCoefficient {
    pub fn eval(&self, eta: f64) -> C64 {
        let (s, c) = (2.0 * eta).sin_cos();
        let mut q = C64::new(self.eps_rel + self.xi * (1.0 - 2.0 * c), -self.xi * self.p * s);
        if self.form == HillForm::Full {
            q.re -= 0.25 * self.xi * self.xi * s * s;
        }
        q
    }

    pub fn period(&self) -> f64 {
        HILL_PERIOD
    }

    /// `u` in terms of `a_0`: `u = a_0 * gauge(eta)`.
    pub fn gauge(&self, eta: f64) -> f64 {
        (-0.25 * self.xi * (2.0 * eta).cos()).exp()
    }
}

pub fn hill_coefficient(xi: f64, p: f64, eps_rel: f64) -> HillCoefficient {
    HillCoefficient { xi, p, eps_rel, form: HillForm::Full }
}

/// Right-hand side of `(u, u', v, v')` for two solutions at once.
fn rhs(q: HillCoefficient) -> impl Fn(f64, &[C64; 4]) -> [C64; 4] {
    move |eta, y| {
        let qv = q.eval(eta);
        [y[1], -qv * y[0], y[3], -qv * y[2]]
    }
}

/// Monodromy matrix `[[u, v], [u', v']]` at `eta = pi` for the fundamental
/// solutions `u(0) = 1, u'(0) = 0` and `v(0) = 0, v'(0) = 1`.
pub fn monodromy(q: HillCoefficient, ode_tol: f64) -> Result<[[C64; 2]; 2]> {
    if !(ode_tol > 0.0) {
        return Err(invalid("ode_tol", "must be positive"));
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::default();
    let y = Dopri5::new(ode_tol).integrate(&rhs(q), 0.0, HILL_PERIOD, [one, zero, zero, one])?;
    Ok([[y[0], y[2]], [y[1], y[3]]])
}

/// Samples of a solution with the given initial data on increasing `eta`
/// points (the first must be `>= 0`). Returns `(u, u')` per point.
pub fn solve_hill(q: HillCoefficient, u0: C64, du0: C64, eta: &[f64], ode_tol: f64) -> Result<Vec<(C64, C64)>> {
    let f = move |t: f64, y: &[C64; 2]| [y[1], -q.eval(t) * y[0]];
    let ys = Dopri5::new(ode_tol).integrate_to(&f, 0.0, eta, [u0, du0])?;
    Ok(ys.into_iter().map(|y| (y[0], y[1])).collect())
}

/// Trace of the monodromy matrix of the full Hill equation.
pub fn floquet_discriminant(xi: f64, p: f64, eps_rel: f64, ode_tol: f64) -> Result<C64> {
    discriminant(hill_coefficient(xi, p, eps_rel), ode_tol)
}

pub fn discriminant(q: HillCoefficient, ode_tol: f64) -> Result<C64> {
    let m = monodromy(q, ode_tol)?;
    Ok(m[0][0] + m[1][1])
}

/// Quasimomentum in `[0, 1]` from `cos(pi p_quasi) = D / 2`.
pub fn quasimomentum(d: f64) -> f64 {
    (0.5 * d).clamp(-1.0, 1.0).acos() / PI
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Band {
    pub index: usize,
    pub lower: f64,
    pub upper: f64,
    /// Scan points inside the band, with edges included.
    pub eps: Vec<f64>,
    pub p_quasi: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Gap {
    pub index: usize,
    pub lower: f64,
    pub upper: f64,
    pub width: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BandStructure {
    pub xi: f64,
    pub p: f64,
    pub form: HillForm,
    pub eps_range: (f64, f64),
    /// Bands inside `eps_range`; the first and last may be clipped by it.
    pub bands: Vec<Band>,
    /// Gaps between consecutive bands.
    pub gaps: Vec<Gap>,
    /// Largest `|Im tr M|` seen.
    pub max_imag_trace: f64,
}

impl BandStructure {
    pub fn edges(&self) -> Vec<f64> {
        self.bands.iter().flat_map(|b| [b.lower, b.upper]).collect()
    }
}

pub fn band_structure(
    xi: f64,
    p: f64,
    eps_range: (f64, f64),
    eps_step: f64,
    ode_tol: f64,
) -> Result<BandStructure> {
    band_structure_with(HillForm::Full, xi, p, eps_range, eps_step, ode_tol)
}

pub fn band_structure_with(
    form: HillForm,
    xi: f64,
    p: f64,
    eps_range: (f64, f64),
    eps_step: f64,
    ode_tol: f64,
) -> Result<BandStructure> {
    let (lo, hi) = eps_range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(invalid("eps_range", format!("need a finite, non-empty range, got ({lo}, {hi})")));
    }
    if !(eps_step > 0.0) {
        return Err(invalid("eps_step", "must be positive"));
    }
    let scanner = Scanner { xi, p, form, ode_tol };
    let n = ((hi - lo) / eps_step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| (lo + k as f64 * eps_step).min(hi)).collect();
    let traces: Vec<C64> = grid.par_iter().map(|&e| scanner.trace(e)).collect::<Result<_>>()?;
    let mut max_imag = traces.iter().map(|d| d.im.abs()).fold(0.0, f64::max);

    // excess > 0 means forbidden
    let excess: Vec<f64> = traces.iter().map(|d| d.re.abs() - 2.0).collect();
    let slack = 10.0 * ode_tol;
    let allowed = |k: usize| excess[k] <= slack;

    let mut edges: Vec<f64> = Vec::new();
    if allowed(0) {
        edges.push(lo);
    }
    for k in 0..n {
        let (a, b) = (grid[k], grid[k + 1]);
        match (allowed(k), allowed(k + 1)) {
            (true, false) | (false, true) => edges.push(scanner.edge(a, b)?),
            (false, false) if traces[k].re.signum() != traces[k + 1].re.signum() => {
                // a whole band lies between two forbidden samples
                let mid = scanner.zero_of_re(a, b)?;
                edges.push(scanner.edge(a, mid)?);
                edges.push(scanner.edge(mid, b)?);
            }
            _ => {}
        }
        // a gap narrower than the step shows up as a local peak of |Re D|
        if k + 2 <= n && allowed(k) && allowed(k + 1) && allowed(k + 2) {
            let peak = excess[k + 1] > excess[k] && excess[k + 1] >= excess[k + 2];
            if peak {
                let (top, value) = scanner.maximize_excess(grid[k], grid[k + 2])?;
                if value > slack {
                    edges.push(scanner.edge(grid[k], top)?);
                    edges.push(scanner.edge(top, grid[k + 2])?);
                }
            }
        }
    }
    if allowed(n) {
        edges.push(hi);
    }
    edges.sort_by(f64::total_cmp);
    debug_assert!(edges.len() % 2 == 0);

    let mut bands = Vec::new();
    for (index, pair) in edges.chunks_exact(2).enumerate() {
        let (lower, upper) = (pair[0], pair[1]);
        let mut eps = vec![lower];
        eps.extend(grid.iter().copied().filter(|&e| e > lower && e < upper));
        eps.push(upper);
        let d: Vec<C64> = eps.par_iter().map(|&e| scanner.trace(e)).collect::<Result<_>>()?;
        max_imag = d.iter().map(|x| x.im.abs()).fold(max_imag, f64::max);
        bands.push(Band { index, lower, upper, eps, p_quasi: d.iter().map(|x| quasimomentum(x.re)).collect() });
    }
    let gaps = bands
        .windows(2)
        .enumerate()
        .map(|(index, w)| Gap { index, lower: w[0].upper, upper: w[1].lower, width: w[1].lower - w[0].upper })
        .collect();
    if max_imag > IMAG_TRACE_WARN {
        log::warn!("|Im tr M| reached {max_imag:.3e} at xi = {xi}, p = {p}; band condition uses Re tr M");
    } else {
        log::debug!("max |Im tr M| = {max_imag:.3e}");
    }
    Ok(BandStructure { xi, p, form, eps_range, bands, gaps, max_imag_trace: max_imag })
}

struct Scanner {
    xi: f64,
    p: f64,
    form: HillForm,
    ode_tol: f64,
}

impl Scanner {
    fn trace(&self, eps_rel: f64) -> Result<C64> {
        discriminant(HillCoefficient { xi: self.xi, p: self.p, eps_rel, form: self.form }, self.ode_tol)
    }

    fn excess(&self, eps: f64) -> Result<f64> {
        Ok(self.trace(eps)?.re.abs() - 2.0)
    }

    /// Root of `|Re D| = 2` in `[a, b]`, assuming opposite signs at the ends.
    fn edge(&self, mut a: f64, mut b: f64) -> Result<f64> {
        let fa = self.excess(a)?;
        let fb = self.excess(b)?;
        if (fa > 0.0) == (fb > 0.0) {
            // within the classification slack of the edge
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
        while b - a > EDGE_TOL {
            let mid = 0.5 * (a + b);
            let fm = self.excess(mid)?;
            if (fm > 0.0) == (fa > 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(0.5 * (a + b))
    }

    fn zero_of_re(&self, mut a: f64, mut b: f64) -> Result<f64> {
        let sa = self.trace(a)?.re.signum();
        for _ in 0..100 {
            let mid = 0.5 * (a + b);
            let d = self.trace(mid)?.re;
            if d.abs() <= 2.0 {
                return Ok(mid);
            }
            if d.signum() == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(0.5 * (a + b))
    }

    /// Golden-section maximum of `|Re D| - 2` on `[a, b]`.
    fn maximize_excess(&self, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let (mut f1, mut f2) = (self.excess(x1)?, self.excess(x2)?);
        while b - a > EDGE_TOL {
            if f1 > f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = self.excess(x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = self.excess(x2)?;
            }
        }
        Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
    }
}
