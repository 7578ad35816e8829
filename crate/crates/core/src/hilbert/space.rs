use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomLevel {
    Lower,
    Upper,
}

impl AtomLevel {
    /// Eigenvalue of sigma_3.
    pub fn sigma_z(self) -> f64 {
        match self {
            AtomLevel::Lower => -1.0,
            AtomLevel::Upper => 1.0,
        }
    }
}

/// One basis vector `|level> |m>_1 |N - m (- 1)>_2 e^{i(q+n) eta}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub level: AtomLevel,
    /// Photons in mode 1.
    pub m: usize,
    /// Plane-wave index, `-n_max ..= n_max`.
    pub n: i64,
}

/// Fixed-excitation-number sector of atom x two-mode Fock x plane waves.
///
/// Ordering: lower-level blocks `m = 0..=N`, then upper-level blocks
/// `m = 0..N`; each block runs over `n = -n_max ..= n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSpace {
    n_excitations: usize,
    q: f64,
    n_max: usize,
}

impl TruncatedSpace {
    pub fn new(n_excitations: i64, q: f64, n_max: usize) -> Result<Self> {
        if n_excitations < 0 {
            return Err(invalid("N", format!("excitation number must be >= 0, got {n_excitations}")));
        }
        if n_max < 1 {
            return Err(invalid("n_max", "plane-wave cutoff must be >= 1"));
        }
        if !q.is_finite() {
            return Err(invalid("q", "momentum offset must be finite"));
        }
        Ok(TruncatedSpace { n_excitations: n_excitations as usize, q, n_max })
    }

    pub fn n_excitations(&self) -> usize {
        self.n_excitations
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn grid_len(&self) -> usize {
        2 * self.n_max + 1
    }

    /// Number of `(level, m)` blocks: `2N + 1`.
    pub fn n_blocks(&self) -> usize {
        2 * self.n_excitations + 1
    }

    pub fn dim(&self) -> usize {
        self.n_blocks() * self.grid_len()
    }

    /// Allowed mode-1 photon numbers for a level.
    pub fn m_range(&self, level: AtomLevel) -> std::ops::Range<usize> {
        match level {
            AtomLevel::Lower => 0..self.n_excitations + 1,
            AtomLevel::Upper => 0..self.n_excitations,
        }
    }

    /// Photons in mode 2, fixed by the excitation number.
    pub fn mode2_count(&self, level: AtomLevel, m: usize) -> usize {
        match level {
            AtomLevel::Lower => self.n_excitations - m,
            AtomLevel::Upper => self.n_excitations - 1 - m,
        }
    }

    fn block(&self, level: AtomLevel, m: usize) -> usize {
        match level {
            AtomLevel::Lower => m,
            AtomLevel::Upper => self.n_excitations + 1 + m,
        }
    }

    pub fn index(&self, s: BasisState) -> Option<usize> {
        if !self.m_range(s.level).contains(&s.m) || s.n.unsigned_abs() as usize > self.n_max {
            return None;
        }
        Some(self.block(s.level, s.m) * self.grid_len() + (s.n + self.n_max as i64) as usize)
    }

    pub fn state(&self, index: usize) -> BasisState {
        assert!(index < self.dim(), "index {index} out of range");
        let block = index / self.grid_len();
        let n = (index % self.grid_len()) as i64 - self.n_max as i64;
        if block <= self.n_excitations {
            BasisState { level: AtomLevel::Lower, m: block, n }
        } else {
            BasisState { level: AtomLevel::Upper, m: block - self.n_excitations - 1, n }
        }
    }

    pub fn states(&self) -> impl Iterator<Item = BasisState> + '_ {
        (0..self.dim()).map(|i| self.state(i))
    }

    /// Center-of-mass momentum `q + n` in units of hbar k.
    pub fn momentum(&self, s: BasisState) -> f64 {
        self.q + s.n as f64
    }

    pub fn is_interior(&self, s: BasisState, margin: usize) -> bool {
        s.n.unsigned_abs() as usize + margin <= self.n_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(TruncatedSpace::new(1, 0.0, 2).unwrap().dim(), 15);
        assert_eq!(TruncatedSpace::new(2, 0.0, 10).unwrap().dim(), 105);
        let vacuum = TruncatedSpace::new(0, 0.3, 4).unwrap();
        assert_eq!(vacuum.dim(), 9);
        assert!(vacuum.states().all(|s| s.level == AtomLevel::Lower));
        assert!(TruncatedSpace::new(-1, 0.0, 2).is_err());
        assert!(TruncatedSpace::new(1, 0.0, 0).is_err());
    }

    #[test]
    fn index_map_is_bijective() {
        for n_exc in 0..4 {
            let space = TruncatedSpace::new(n_exc, -0.2, 3).unwrap();
            for i in 0..space.dim() {
                let s = space.state(i);
                assert_eq!(space.index(s), Some(i));
                let photons = s.m + space.mode2_count(s.level, s.m);
                let atom = if s.level == AtomLevel::Upper { 1 } else { 0 };
                assert_eq!(photons + atom, n_exc as usize);
            }
            assert_eq!(space.index(BasisState { level: AtomLevel::Lower, m: 0, n: 4 }), None);
            assert_eq!(
                space.index(BasisState { level: AtomLevel::Upper, m: n_exc as usize, n: 0 }),
                None
            );
        }
    }
}
