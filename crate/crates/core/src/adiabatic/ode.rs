//! Adaptive Dormand–Prince 5(4) for small complex first-order systems.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const MAX_STEPS: usize = 1_000_000;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights are the last row of A (FSAL)
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrator with mixed absolute/relative per-step error control.
#[derive(Clone, Copy, Debug)]
pub struct Dopri5 {
    pub tol: f64,
}

impl Dopri5 {
    pub fn new(tol: f64) -> Self {
        Dopri5 { tol }
    }

    /// Integrates `y' = f(t, y)` from `t0` to `t1` and returns `y(t1)`.
    pub fn integrate<const D: usize>(
        &self,
        f: &impl Fn(f64, &[C64; D]) -> [C64; D],
        t0: f64,
        t1: f64,
        y0: [C64; D],
    ) -> Result<[C64; D]> {
        Ok(self.integrate_to(f, t0, &[t1], y0)?.pop().expect("one output"))
    }

    /// Integrates through the increasing `outputs` and returns the state at
    /// each of them. Steps are clipped so every output is hit exactly.
    pub fn integrate_to<const D: usize>(
        &self,
        f: &impl Fn(f64, &[C64; D]) -> [C64; D],
        t0: f64,
        outputs: &[f64],
        y0: [C64; D],
    ) -> Result<Vec<[C64; D]>> {
        let mut t = t0;
        let mut y = y0;
        let span = outputs.last().map_or(0.0, |&t1| (t1 - t0).abs()).max(1e-3);
        let mut h = span * 1e-2;
        let mut steps = 0;
        let mut out = Vec::with_capacity(outputs.len());
        let mut k1 = f(t, &y);
        for &target in outputs {
            while t < target {
                if steps >= MAX_STEPS || h < 1e-14 * span {
                    return Err(Error::Integrator { eta: t, step: h, steps });
                }
                let last = t + h >= target;
                let step = if last { target - t } else { h };
                let (y_new, k_last, err) = self.step(f, t, &y, &k1, step);
                steps += 1;
                if err <= 1.0 {
                    t = if last { target } else { t + step };
                    y = y_new;
                    k1 = k_last;
                }
                let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                let next = step * factor;
                // keep the pre-clip size after a clipped step
                h = if last && err <= 1.0 { h.max(next) } else { next };
            }
            out.push(y);
        }
        Ok(out)
    }

    fn step<const D: usize>(
        &self,
        f: &impl Fn(f64, &[C64; D]) -> [C64; D],
        t: f64,
        y: &[C64; D],
        k1: &[C64; D],
        h: f64,
    ) -> ([C64; D], [C64; D], f64) {
        let mut k = [[C64::default(); D]; 7];
        k[0] = *k1;
        for s in 1..7 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..D {
                        ys[i] += kj[i] * (h * a);
                    }
                }
            }
            k[s] = f(t + C[s] * h, &ys);
        }
        let mut y5 = *y;
        let mut err = 0.0f64;
        for i in 0..D {
            let mut d5 = C64::default();
            let mut d4 = C64::default();
            for s in 0..7 {
                d5 += k[s][i] * B5[s];
                d4 += k[s][i] * B4[s];
            }
            y5[i] += d5 * h;
            let scale = self.tol * (1.0 + y[i].norm().max(y5[i].norm()));
            err = err.max(((d5 - d4) * h).norm() / scale);
        }
        (y5, k[6], err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn harmonic_oscillator_period() {
        // y'' = -4 y over one period pi returns to the start
        let f = |_: f64, y: &[C64; 2]| [y[1], -y[0] * 4.0];
        let y = Dopri5::new(1e-12).integrate(&f, 0.0, PI, [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        assert!((y[0] - C64::new(1.0, 0.0)).norm() < 1e-10);
        assert!(y[1].norm() < 1e-9);
    }

    #[test]
    fn complex_exponential_and_outputs() {
        let f = |_: f64, y: &[C64; 1]| [y[0] * C64::new(0.0, 3.0)];
        let ts: Vec<f64> = (1..=10).map(|k| k as f64 * 0.3).collect();
        let ys = Dopri5::new(1e-11).integrate_to(&f, 0.0, &ts, [C64::new(1.0, 0.0)]).unwrap();
        for (t, y) in ts.iter().zip(&ys) {
            assert!((y[0] - C64::from_polar(1.0, 3.0 * t)).norm() < 1e-9);
        }
    }

    #[test]
    fn tighter_tolerance_is_more_accurate() {
        let f = |t: f64, y: &[C64; 1]| [y[0] * t.cos()];
        let exact = (2.0f64).sin().exp();
        let e = |tol| (Dopri5::new(tol).integrate(&f, 0.0, 2.0, [C64::new(1.0, 0.0)]).unwrap()[0].re - exact).abs();
        assert!(e(1e-12) < e(1e-6));
        assert!(e(1e-12) < 1e-10);
    }

    #[test]
    fn blow_up_reports_diagnostics() {
        let f = |_: f64, y: &[C64; 1]| [y[0] * y[0]];
        let err = Dopri5::new(1e-10).integrate(&f, 0.0, 2.0, [C64::new(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::Integrator { eta, .. } if eta < 1.0 + 1e-6));
    }
}
