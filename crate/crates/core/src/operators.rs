//! The commuting observables `H`, `P`, `N`, `T` in recoil units.
//!
//! Energies are in units of `E_rec = hbar^2 k^2 / 2M`, momenta in `hbar k`,
//! `eta = k z`. Energies are absolute (they include `hbar Omega N`).
//!
//! Detuning convention: the upper-level block sits at `N Omega + Delta`
//! above the lower one at `N Omega` (plus kinetic energy), i.e. the atomic
//! transition is `hbar omega_0 / E_rec = Omega + Delta`. This is the sign
//! under which adiabatic elimination of the excited level at large
//! `Delta > 0` yields the light shift `-xi` with `xi = zeta^2 / Delta`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::classical_field::BasisAngle;
use crate::error::{invalid, Result};
use crate::hilbert::{
    atom_sigma, cm_momentum, commutator, interior_norm, mode_lowering, translation_phase, AtomLevel, BasisState,
    Mode, Sigma, SparseOperator, TruncatedSpace,
};

/// Products of two single-step operators reach two plane waves past a row,
/// so commutators are compared this far inside the cutoff.
pub const COMMUTATOR_MARGIN: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Photon energy `hbar omega / E_rec`.
    pub omega: f64,
    /// Detuning; upper block offset relative to `N Omega`.
    pub delta: f64,
    /// Atom-field coupling `beta / E_rec`, nonnegative.
    pub zeta: f64,
    pub alpha: BasisAngle,
    pub n_excitations: usize,
}

impl SystemParams {
    pub fn new(omega: f64, delta: f64, zeta: f64, alpha: BasisAngle, n_excitations: usize) -> Result<Self> {
        for (name, v) in [("Omega", omega), ("Delta", delta), ("zeta", zeta)] {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        if zeta < 0.0 {
            return Err(invalid("zeta", "coupling is nonnegative by phase convention"));
        }
        Ok(SystemParams { omega, delta, zeta, alpha, n_excitations })
    }

    /// `hbar omega_0 / E_rec`.
    pub fn atomic_frequency(&self) -> f64 {
        self.omega + self.delta
    }

    /// `N hbar Omega`, the offset removed when reporting `eps - N Omega`.
    pub fn photon_offset(&self) -> f64 {
        self.n_excitations as f64 * self.omega
    }

    pub fn space(&self, q: f64, n_max: usize) -> Result<TruncatedSpace> {
        TruncatedSpace::new(self.n_excitations as i64, q, n_max)
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn check(space: &TruncatedSpace, params: &SystemParams) {
    assert_eq!(
        space.n_excitations(),
        params.n_excitations,
        "space and parameters disagree on the excitation number"
    );
}

fn photons(space: &TruncatedSpace, s: BasisState) -> usize {
    s.m + space.mode2_count(s.level, s.m)
}

/// `hbar Omega (n_1 + n_2)`.
pub fn h_field(space: &TruncatedSpace, params: &SystemParams) -> SparseOperator {
    check(space, params);
    SparseOperator::diagonal(*space, |i| real(params.omega * photons(space, space.state(i)) as f64))
}

/// Kinetic `(q + n)^2` plus `hbar omega_0` on the upper level.
pub fn h_atom(space: &TruncatedSpace, params: &SystemParams) -> SparseOperator {
    check(space, params);
    SparseOperator::diagonal(*space, |i| {
        let s = space.state(i);
        let k = space.momentum(s);
        let internal = if s.level == AtomLevel::Upper { params.atomic_frequency() } else { 0.0 };
        real(k * k + internal)
    })
}

/// `-zeta sigma^+ (chi_1(eta) a_1 + chi_2(eta) a_2) + h.c.` with
/// `chi_1 = cos a e^{i eta} + sin a e^{-i eta}`,
/// `chi_2 = cos a e^{-i eta} - sin a e^{i eta}`.
pub fn h_inter(space: &TruncatedSpace, params: &SystemParams) -> SparseOperator {
    check(space, params);
    let (s, c) = params.alpha.radians().sin_cos();
    let fwd = translation_phase(space, 1).expect("valid sign");
    let bwd = translation_phase(space, -1).expect("valid sign");
    let chi1 = &fwd.scale(real(c)) + &bwd.scale(real(s));
    let chi2 = &bwd.scale(real(c)) - &fwd.scale(real(s));
    let j1 = mode_lowering(space, Mode::One);
    let j2 = mode_lowering(space, Mode::Two);
    let raise = (&(&j1 * &chi1) + &(&j2 * &chi2)).scale(real(-params.zeta));
    &raise + &raise.adjoint()
}

/// Number operators `(n_1, n_2)` assembled from the excitation-conserving
/// ladders: `n_k = J_k^dag J_k + J_k J_k^dag - P_upper`.
pub fn photon_numbers(space: &TruncatedSpace) -> (SparseOperator, SparseOperator) {
    let p_up = SparseOperator::diagonal(*space, |i| {
        real(if space.state(i).level == AtomLevel::Upper { 1.0 } else { 0.0 })
    });
    let number = |j: SparseOperator| &(&(&j.adjoint() * &j) + &(&j * &j.adjoint())) - &p_up;
    (number(mode_lowering(space, Mode::One)), number(mode_lowering(space, Mode::Two)))
}

/// `cos 2a (n_1 - n_2) - sin 2a (a_1^dag a_2 + a_2^dag a_1)` in units of
/// `hbar k`, from explicit matrix elements.
pub fn p_field(space: &TruncatedSpace, params: &SystemParams) -> SparseOperator {
    check(space, params);
    let (c2, s2) = (params.alpha.cos2(), params.alpha.sin2());
    let mut triplets = Vec::new();
    for (j, st) in space.states().enumerate() {
        let n2 = space.mode2_count(st.level, st.m);
        triplets.push((j, j, real(c2 * (st.m as f64 - n2 as f64))));
        // a_1^dag a_2: m -> m + 1
        if n2 > 0 {
            let i = space.index(BasisState { m: st.m + 1, ..st }).expect("m + 1 in sector");
            let amp = ((st.m + 1) as f64 * n2 as f64).sqrt();
            triplets.push((i, j, real(-s2 * amp)));
            triplets.push((j, i, real(-s2 * amp)));
        }
    }
    SparseOperator::from_triplets(*space, triplets)
}

pub fn h_total(space: &TruncatedSpace, params: &SystemParams) -> SparseOperator {
    &(&h_atom(space, params) + &h_field(space, params)) + &h_inter(space, params)
}

pub fn p_total(space: &TruncatedSpace, params: &SystemParams) -> SparseOperator {
    &cm_momentum(space) + &p_field(space, params)
}

/// `(1 + sigma_3)/2 + n_1 + n_2`; equals `N` times the identity on a
/// well-formed sector.
pub fn n_op(space: &TruncatedSpace) -> SparseOperator {
    let half = real(0.5);
    let atom = (&SparseOperator::identity(*space) + &atom_sigma(space, Sigma::Z)).scale(half);
    let (n1, n2) = photon_numbers(space);
    &(&atom + &n1) + &n2
}

/// `sigma_3 exp(i pi p_atom)`, diagonal `sigma_3 e^{i pi q} (-1)^n`.
pub fn t_op(space: &TruncatedSpace) -> SparseOperator {
    let base = C64::from_polar(1.0, PI * space.q());
    SparseOperator::diagonal(*space, |i| {
        let s = space.state(i);
        let parity = if s.n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        base * (s.level.sigma_z() * parity)
    })
}

/// Interior norms of the six commutators among `H`, `P`, `N`, `T`, labeled
/// like `"[H,P]"`.
pub fn commuting_set_defects(space: &TruncatedSpace, params: &SystemParams) -> Vec<(String, f64)> {
    let ops = [
        ("H", h_total(space, params)),
        ("P", p_total(space, params)),
        ("N", n_op(space)),
        ("T", t_op(space)),
    ];
    let mut out = Vec::with_capacity(6);
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            let c = commutator(&ops[a].1, &ops[b].1).expect("operators share the space");
            out.push((format!("[{},{}]", ops[a].0, ops[b].0), interior_norm(&c, COMMUTATOR_MARGIN)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hermiticity_defect;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn params(alpha: f64, zeta: f64, n: usize) -> SystemParams {
        SystemParams::new(100.0, 10.0, zeta, BasisAngle::new(alpha), n).unwrap()
    }

    fn lower(m: usize, n: i64) -> BasisState {
        BasisState { level: AtomLevel::Lower, m, n }
    }

    fn upper(m: usize, n: i64) -> BasisState {
        BasisState { level: AtomLevel::Upper, m, n }
    }

    fn elem(op: &SparseOperator, row: BasisState, col: BasisState) -> C64 {
        let s = op.space();
        op.get(s.index(row).unwrap(), s.index(col).unwrap())
    }

    #[test]
    fn field_energy() {
        let p = params(0.3, 1.0, 1);
        let space = p.space(0.0, 3).unwrap();
        let h = h_field(&space, &p);
        assert_eq!(elem(&h, lower(0, 0), lower(0, 0)).re, 100.0);
        assert_eq!(elem(&h, upper(0, 0), upper(0, 0)).re, 0.0);
        let h0 = h_field(&space, &params(0.0, 1.0, 1));
        assert_eq!((&h - &h0).max_norm(), 0.0);
    }

    #[test]
    fn field_momentum() {
        let p = params(0.0, 1.0, 1);
        let space = p.space(0.0, 3).unwrap();
        let pf = p_field(&space, &p);
        assert_eq!(elem(&pf, lower(1, 0), lower(1, 0)).re, 1.0);
        assert!(pf.is_diagonal(0.0));

        let p = params(FRAC_PI_4, 1.0, 1);
        let pf = p_field(&space, &p);
        assert!((elem(&pf, lower(0, 0), lower(1, 0)).re + 1.0).abs() < 1e-15);
        assert!(elem(&pf, lower(0, 0), lower(0, 0)).norm() < 1e-15);
        for alpha in [0.0, 0.3, FRAC_PI_4] {
            let pf = p_field(&space, &params(alpha, 1.0, 1));
            let trace: f64 = space
                .states()
                .enumerate()
                .filter(|(_, s)| s.level == AtomLevel::Lower && s.n == 0)
                .map(|(i, _)| pf.get(i, i).re)
                .sum();
            assert!(trace.abs() < 1e-15);
        }
    }

    #[test]
    fn field_momentum_matches_ladder_composition() {
        for n_exc in 1..4 {
            for alpha in [0.0, 0.3, FRAC_PI_4, 1.2] {
                let p = params(alpha, 1.0, n_exc);
                let space = p.space(0.2, 2).unwrap();
                let (n1, n2) = photon_numbers(&space);
                let j1 = mode_lowering(&space, Mode::One);
                let j2 = mode_lowering(&space, Mode::Two);
                let hop = &(&j1.adjoint() * &j2) + &(&j2 * &j1.adjoint());
                let hop = &hop + &hop.adjoint();
                let composed = &(&n1 - &n2).scale(real(p.alpha.cos2())) - &hop.scale(real(p.alpha.sin2()));
                assert!((&composed - &p_field(&space, &p)).max_norm() < 1e-14);
            }
        }
    }

    #[test]
    fn atom_hamiltonian() {
        let p = params(0.0, 1.0, 1);
        let space = p.space(0.0, 3).unwrap();
        let h = h_atom(&space, &p);
        assert_eq!(elem(&h, lower(0, 2), lower(0, 2)).re, 4.0);
        // omega_0 = Omega + Delta
        assert_eq!(elem(&h, upper(0, 0), upper(0, 0)).re, 110.0);
        assert!(h.is_diagonal(0.0));
        assert_eq!(hermiticity_defect(&h), 0.0);
    }

    #[test]
    fn interaction_elements() {
        let space = TruncatedSpace::new(1, 0.0, 3).unwrap();
        let h = h_inter(&space, &params(0.0, 1.5, 1));
        assert_eq!(elem(&h, upper(0, 1), lower(1, 0)).re, -1.5);
        // mode 1 empty: lower m = 0 couples only through mode 2
        let j = space.index(lower(0, 0)).unwrap();
        for (i, s) in space.states().enumerate() {
            let v = h.get(i, j);
            if v.norm() > 0.0 {
                assert_eq!(s.level, AtomLevel::Upper);
                assert_eq!(s.n, -1);
            }
        }
        let h = h_inter(&space, &params(FRAC_PI_4, 1.5, 1));
        assert!((elem(&h, upper(0, -1), lower(1, 0)).re + 1.5 * FRAC_1_SQRT_2).abs() < 1e-15);
        for (i, j, _) in h.entries() {
            let (a, b) = (space.state(i), space.state(j));
            assert_ne!(a.level, b.level);
            assert_eq!((a.n - b.n).abs(), 1);
        }
        assert_eq!(hermiticity_defect(&h), 0.0);
    }

    #[test]
    fn totals() {
        let space = TruncatedSpace::new(2, 0.1, 4).unwrap();
        assert!(h_total(&space, &params(0.3, 0.0, 2)).is_diagonal(0.0));
        assert!(p_total(&space, &params(0.0, 1.0, 2)).is_diagonal(0.0));
        assert!(!p_total(&space, &params(0.3, 1.0, 2)).is_diagonal(1e-12));
        for alpha in [0.0, 0.3, FRAC_PI_4] {
            assert_eq!(hermiticity_defect(&h_total(&space, &params(alpha, 3.0, 2))), 0.0);
            assert!(hermiticity_defect(&p_total(&space, &params(alpha, 3.0, 2))) < 1e-15);
        }
    }

    #[test]
    fn number_and_combined_operators() {
        for n_exc in 0..4 {
            let space = TruncatedSpace::new(n_exc, 0.3, 3).unwrap();
            let n = n_op(&space);
            let target = SparseOperator::identity(space).scale(real(n_exc as f64));
            assert!((&n - &target).max_norm() < 1e-14);
        }
        let space = TruncatedSpace::new(1, 0.0, 3).unwrap();
        let t = t_op(&space);
        assert_eq!(elem(&t, lower(0, 1), lower(0, 1)), real(1.0));
        let u = &t * &t.adjoint();
        assert!((&u - &SparseOperator::identity(space)).max_norm() < 1e-15);
    }

    #[test]
    fn commuting_set() {
        for n_exc in [1usize, 2] {
            for alpha in [0.0, 0.3, FRAC_PI_4] {
                for zeta in [0.0, 1.0, 5.0] {
                    let p = params(alpha, zeta, n_exc);
                    let space = p.space(0.37, 12).unwrap();
                    let defects = commuting_set_defects(&space, &p);
                    assert_eq!(defects.len(), 6);
                    for (name, d) in defects {
                        assert!(d < 1e-10, "{name} alpha {alpha}");
                    }
                }
            }
        }
    }

    #[test]
    fn field_momentum_off_diagonal_weight_tracks_sin_2alpha() {
        let space = TruncatedSpace::new(2, 0.0, 1).unwrap();
        let norm_at = |alpha: f64| {
            let pf = p_field(&space, &params(alpha, 1.0, 2));
            pf.entries().filter(|(i, j, _)| i != j).map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
        };
        let reference = norm_at(FRAC_PI_4);
        assert!(norm_at(0.0) == 0.0);
        for alpha in [0.1, 0.3, 0.6] {
            assert!((norm_at(alpha) - (2.0 * alpha).sin() * reference).abs() < 1e-14);
        }
    }
}
