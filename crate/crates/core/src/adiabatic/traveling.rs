//! Closed-form `alpha = 0` spectrum and amplitudes after elimination of
//! the excited level.
//!
//! The lower amplitudes `a_0 e^{i(p+1)eta}` and `a_1 e^{i(p-1)eta}` obey
//! `[[(p+1)^2 - xi, -xi], [-xi, (p-1)^2 - xi]] (a_0, a_1) = eps (a_0, a_1)`.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Minus,
    Plus,
}

/// `(eps_-, eps_+)` relative to `Omega`.
pub fn spectrum_traveling(xi: f64, p: f64) -> (f64, f64) {
    let center = 1.0 + p * p - xi;
    let split = (4.0 * p * p + xi * xi).sqrt();
    (center - split, center + split)
}

pub fn effective_matrix(xi: f64, p: f64) -> [[f64; 2]; 2] {
    [[(p + 1.0).powi(2) - xi, -xi], [-xi, (p - 1.0).powi(2) - xi]]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TravelingAmplitudes {
    pub eps_rel: f64,
    pub a0: f64,
    pub a1: f64,
    /// Plane-wave momenta of `a_0(eta)` and `a_1(eta)`.
    pub k0: f64,
    pub k1: f64,
}

/// Normalized real eigenvector of the effective matrix, sign fixed so the
/// first nonzero component is positive. At a degeneracy (`xi = 0`, `p = 0`)
/// the minus branch is `(1, 0)`.
pub fn traveling_amplitudes(xi: f64, p: f64, branch: Branch) -> TravelingAmplitudes {
    let (em, ep) = spectrum_traveling(xi, p);
    let eps = if branch == Branch::Minus { em } else { ep };
    let m = effective_matrix(xi, p);
    let u = [m[0][1], eps - m[0][0]];
    let v = [eps - m[1][1], m[1][0]];
    let norm = |w: [f64; 2]| w[0].hypot(w[1]);
    let best = if norm(u) >= norm(v) { u } else { v };
    let (mut a0, mut a1) = if norm(best) > 1e-300 {
        (best[0] / norm(best), best[1] / norm(best))
    } else if branch == Branch::Minus {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    };
    if a0 < 0.0 || (a0 == 0.0 && a1 < 0.0) {
        a0 = -a0;
        a1 = -a1;
    }
    TravelingAmplitudes { eps_rel: eps, a0, a1, k0: p + 1.0, k1: p - 1.0 }
}
