//! Truncated Hilbert space of the atom + two-mode field system and a small
//! sparse operator algebra on it.
//!
//! The space is a fixed excitation-number sector: the mode-2 photon count is
//! implied by the atom level and the mode-1 count `m`. Operators that would
//! change the excitation number on their own (bare `a_k`, bare `sigma^+`
//! with photons fixed) are therefore built in their excitation-conserving
//! forms. The center of mass lives on a plane-wave grid
//! `e^{i(q+n) eta}`, `|n| <= n_max`, with an absorbing edge.

mod space;
mod sparse;

use num_complex::Complex64 as C64;

pub use space::{AtomLevel, BasisState, TruncatedSpace};
pub use sparse::{commutator, hermiticity_defect, interior_norm, interior_vector_norm, SparseOperator};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sigma {
    Plus,
    Minus,
    Z,
}

pub fn make_space(n_excitations: i64, q: f64, n_max: usize) -> Result<TruncatedSpace> {
    TruncatedSpace::new(n_excitations, q, n_max)
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Excitation-conserving lowering `sigma^+ a_k`: takes `|lower, m>` to
/// `|upper, m - 1>` with `sqrt(m)` (mode 1) or to `|upper, m>` with
/// `sqrt(N - m)` (mode 2). The plane-wave index is untouched.
pub fn mode_lowering(space: &TruncatedSpace, which: Mode) -> SparseOperator {
    let mut triplets = Vec::new();
    for (j, s) in space.states().enumerate() {
        if s.level != AtomLevel::Lower {
            continue;
        }
        let (target_m, amp) = match which {
            Mode::One if s.m > 0 => (s.m - 1, (s.m as f64).sqrt()),
            Mode::Two if space.mode2_count(s.level, s.m) > 0 => (s.m, (space.mode2_count(s.level, s.m) as f64).sqrt()),
            _ => continue,
        };
        let i = space
            .index(BasisState { level: AtomLevel::Upper, m: target_m, ..s })
            .expect("target lies in the sector");
        triplets.push((i, j, real(amp)));
    }
    SparseOperator::from_triplets(*space, triplets)
}

/// Atomic operators. `sigma^+-` flip the level and keep the mode-1 label, so
/// mode 2 absorbs the excitation change; `|lower, m = N>` has no partner.
pub fn atom_sigma(space: &TruncatedSpace, which: Sigma) -> SparseOperator {
    match which {
        Sigma::Z => SparseOperator::diagonal(*space, |i| real(space.state(i).level.sigma_z())),
        Sigma::Plus | Sigma::Minus => {
            let mut triplets = Vec::new();
            for (j, s) in space.states().enumerate() {
                if s.level == AtomLevel::Lower {
                    if let Some(i) = space.index(BasisState { level: AtomLevel::Upper, ..s }) {
                        triplets.push((i, j, real(1.0)));
                    }
                }
            }
            let plus = SparseOperator::from_triplets(*space, triplets);
            if which == Sigma::Plus {
                plus
            } else {
                plus.adjoint()
            }
        }
    }
}

/// Multiplication by `e^{+- i eta}`: shifts `n -> n +- 1`; states pushed past
/// the cutoff are dropped.
pub fn translation_phase(space: &TruncatedSpace, sign: i32) -> Result<SparseOperator> {
    if sign != 1 && sign != -1 {
        return Err(invalid("sign", format!("expected +1 or -1, got {sign}")));
    }
    let triplets = space.states().enumerate().filter_map(|(j, s)| {
        space
            .index(BasisState { n: s.n + sign as i64, ..s })
            .map(|i| (i, j, real(1.0)))
    });
    Ok(SparseOperator::from_triplets(*space, triplets.collect::<Vec<_>>()))
}

/// `-i d/d eta`, diagonal `q + n` in units of hbar k.
pub fn cm_momentum(space: &TruncatedSpace) -> SparseOperator {
    SparseOperator::diagonal(*space, |i| real(space.momentum(space.state(i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

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
    fn ladder_elements() {
        let s1 = make_space(1, 0.0, 2).unwrap();
        let a1 = mode_lowering(&s1, Mode::One);
        assert_eq!(elem(&a1, upper(0, 0), lower(1, 0)), real(1.0));
        let s2 = make_space(2, 0.0, 2).unwrap();
        let a1 = mode_lowering(&s2, Mode::One);
        assert!((elem(&a1, upper(1, 1), lower(2, 1)).re - 2f64.sqrt()).abs() < 1e-15);
        // vacuum of mode 1: whole column is empty
        for n in -2..=2 {
            let j = s2.index(lower(0, n)).unwrap();
            assert!((0..s2.dim()).all(|i| a1.get(i, j) == C64::default()));
        }
        let a2 = mode_lowering(&s2, Mode::Two);
        assert!((elem(&a2, upper(0, 0), lower(0, 0)).re - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(elem(&a2, upper(1, 0), lower(1, 0)), real(1.0));
    }

    #[test]
    fn bosonic_commutator_across_sectors() {
        // <up, m| J J^dag |up, m> - <low, m| J^dag J |low, m> = (m + 1) - m
        for n_exc in 1..4 {
            let space = make_space(n_exc, 0.0, 2).unwrap();
            let j = mode_lowering(&space, Mode::One);
            let jjd = &j * &j.adjoint();
            let jdj = &j.adjoint() * &j;
            for m in 0..n_exc as usize {
                let d = elem(&jjd, upper(m, 0), upper(m, 0)) - elem(&jdj, lower(m, 0), lower(m, 0));
                assert!((d - real(1.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sigma_algebra() {
        let space = make_space(2, 0.1, 3).unwrap();
        let sz = atom_sigma(&space, Sigma::Z);
        let sp = atom_sigma(&space, Sigma::Plus);
        let sm = atom_sigma(&space, Sigma::Minus);
        assert_eq!(elem(&sz, lower(1, 0), lower(1, 0)), real(-1.0));
        // sigma^+ annihilates the upper level
        for s in space.states().filter(|s| s.level == AtomLevel::Upper) {
            let j = space.index(s).unwrap();
            assert!((0..space.dim()).all(|i| sp.get(i, j) == C64::default()));
        }
        // anticommutator is the identity on the paired subspace
        let anti = &(&sp * &sm) + &(&sm * &sp);
        for (i, s) in space.states().enumerate() {
            let expected = if s.level == AtomLevel::Lower && s.m == 2 { 0.0 } else { 1.0 };
            assert_eq!(anti.get(i, i), real(expected));
        }
        assert!(anti.is_diagonal(0.0));
        let c = commutator(&sz, &sp).unwrap();
        assert!((&c - &sp.scale(real(2.0))).max_norm() < 1e-15);
    }

    #[test]
    fn translation_shifts_and_truncates() {
        let space = make_space(1, 0.0, 3).unwrap();
        let up = translation_phase(&space, 1).unwrap();
        let down = translation_phase(&space, -1).unwrap();
        assert_eq!(elem(&up, lower(0, 1), lower(0, 0)), real(1.0));
        let edge = space.index(lower(0, 3)).unwrap();
        assert!((0..space.dim()).all(|i| up.get(i, edge) == C64::default()));
        let prod = &up * &down;
        assert!(interior_norm(&(&prod - &SparseOperator::identity(space)), 1) == 0.0);
        assert!(translation_phase(&space, 2).is_err());
    }

    #[test]
    fn momentum_operator() {
        let space = make_space(1, 0.3, 4).unwrap();
        let p = cm_momentum(&space);
        assert!((elem(&p, lower(1, 2), lower(1, 2)).re - 2.3).abs() < 1e-15);
        assert_eq!(hermiticity_defect(&p), 0.0);
        let sz = atom_sigma(&space, Sigma::Z);
        assert_eq!(commutator(&p, &sz).unwrap().max_norm(), 0.0);
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let space = make_space(2, 0.0, 3).unwrap();
        let a = &mode_lowering(&space, Mode::Two) * &translation_phase(&space, 1).unwrap();
        let c = commutator(&SparseOperator::identity(space), &a).unwrap();
        assert_eq!(c.max_norm(), 0.0);
    }

    #[test]
    fn space_mismatch_rejected() {
        let a = SparseOperator::identity(make_space(1, 0.0, 3).unwrap());
        let b = SparseOperator::identity(make_space(1, 0.5, 3).unwrap());
        assert!(matches!(commutator(&a, &b), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn builders_are_banded_and_adjoint_consistent() {
        let space = make_space(2, 0.0, 4).unwrap();
        let ops = [
            mode_lowering(&space, Mode::One),
            mode_lowering(&space, Mode::Two),
            atom_sigma(&space, Sigma::Plus),
            translation_phase(&space, 1).unwrap(),
            translation_phase(&space, -1).unwrap(),
        ];
        for op in &ops {
            for (i, j, _) in op.entries() {
                assert!((space.state(i).n - space.state(j).n).abs() <= 1);
            }
            let back = op.adjoint().adjoint();
            assert_eq!((&back - op).max_norm(), 0.0);
        }
        // raising operator built by hand equals the adjoint elementwise
        let a1 = &ops[0];
        let raise = SparseOperator::from_triplets(
            space,
            a1.entries().map(|(i, j, v)| (j, i, v.conj())).collect::<Vec<_>>(),
        );
        assert_eq!((&raise - &a1.adjoint()).max_norm(), 0.0);
    }
}
