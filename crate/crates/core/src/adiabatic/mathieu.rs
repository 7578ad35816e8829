//! Mathieu characteristic values `a_r(q)`, `b_r(q)` of
//! `y'' + (a - 2 q cos 2x) y = 0` by truncated Fourier matrices.
//!
//! Each parity class is a symmetric tridiagonal matrix; eigenvalues come
//! from Sturm-sequence bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rows per parity class.
pub const ORACLE_DIM: usize = 40;

struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diag.len() {
            let b2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            d = self.diag[i] - x - if i == 0 { 0.0 } else { b2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[i].abs() + x.abs()).max(1.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// `k`-th smallest eigenvalue (0-based).
    fn eigenvalue(&self, k: usize) -> f64 {
        let r = (0..self.diag.len())
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = self.off.get(i).map_or(0.0, |v| v.abs());
                (self.diag[i] - left - right, self.diag[i] + left + right)
            })
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (l, h)| (lo.min(l), hi.max(h)));
        let (mut lo, mut hi) = r;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Fourier basis of one parity class: `cos 2kx`, `cos (2k+1)x`,
/// `sin (2k+1)x`, `sin (2k+2)x`.
#[derive(Clone, Copy)]
enum Class {
    EvenCos,
    OddCos,
    OddSin,
    EvenSin,
}

fn class_matrix(class: Class, q: f64, dim: usize) -> Tridiagonal {
    let wavenumber = |k: usize| match class {
        Class::EvenCos => 2 * k,
        Class::OddCos | Class::OddSin => 2 * k + 1,
        Class::EvenSin => 2 * k + 2,
    } as f64;
    let mut diag: Vec<f64> = (0..dim).map(|k| wavenumber(k).powi(2)).collect();
    let mut off = vec![q; dim - 1];
    match class {
        // symmetrized coupling between the constant and cos 2x
        Class::EvenCos => off[0] = std::f64::consts::SQRT_2 * q,
        Class::OddCos => diag[0] += q,
        Class::OddSin => diag[0] -= q,
        Class::EvenSin => {}
    }
    Tridiagonal { diag, off }
}

/// `a_r(q)`, `r = 0, 1, 2, ...`.
pub fn characteristic_a(r: usize, q: f64) -> f64 {
    let class = if r % 2 == 0 { Class::EvenCos } else { Class::OddCos };
    class_matrix(class, q, ORACLE_DIM.max(r / 2 + 20)).eigenvalue(r / 2)
}

/// `b_r(q)`, `r = 1, 2, ...`.
pub fn characteristic_b(r: usize, q: f64) -> f64 {
    assert!(r >= 1, "b_0 does not exist");
    let class = if r % 2 == 1 { Class::OddSin } else { Class::EvenSin };
    class_matrix(class, q, ORACLE_DIM.max(r / 2 + 20)).eigenvalue((r - 1) / 2)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MathieuBands {
    pub xi: f64,
    pub p: f64,
    /// `xi sqrt(1 - p^2/4)`.
    pub q_eff: f64,
    /// Imaginary shift of the argument, `artanh(p/2) / 2`.
    pub phi: f64,
    /// Ascending band edges in `eps - Omega`; band `k` spans
    /// `edges[2k]..edges[2k+1]`.
    pub edges: Vec<f64>,
}

impl MathieuBands {
    pub fn bands(&self) -> Vec<(f64, f64)> {
        self.edges.chunks_exact(2).map(|c| (c[0], c[1])).collect()
    }

    pub fn gaps(&self) -> Vec<(f64, f64)> {
        self.edges[1..].chunks_exact(2).map(|c| (c[0], c[1])).collect()
    }
}

/// Band edges of the Hill equation without its `xi^2` term, mapped to the
/// standard Mathieu form with `a = eps - Omega + xi`, `q = q_eff`.
pub fn mathieu_bands(xi: f64, p: f64, n_levels: usize) -> Result<MathieuBands> {
    if !(p.abs() < 2.0) {
        return Err(Error::MathieuDomain { p });
    }
    let q_eff = xi * (1.0 - p * p / 4.0).sqrt();
    // edges come in pairs {a_r, b_r}; sorting handles either sign of q
    let mut edges = vec![characteristic_a(0, q_eff)];
    for r in 1..=n_levels {
        let (a, b) = (characteristic_a(r, q_eff), characteristic_b(r, q_eff));
        edges.push(a.min(b));
        edges.push(a.max(b));
    }
    edges.truncate(2 * n_levels);
    edges.sort_by(f64::total_cmp);
    Ok(MathieuBands { xi, p, q_eff, phi: 0.5 * (p / 2.0).atanh(), edges: edges.iter().map(|e| e - xi).collect() })
}
