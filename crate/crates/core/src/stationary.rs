//! Simultaneous eigenstates of `H` and `P`.
//!
//! `P` is diagonalized once; the eigenvectors whose eigenvalue lies within
//! the cluster tolerance of the requested momentum span the sector `V`.
//! Because `[H, P] = 0`, diagonalizing `V^dag H V` and lifting back yields
//! joint eigenvectors. At `alpha = 0` the same energies follow from a
//! closed `(2N+1)`-dimensional system over constant amplitudes.
//!
//! States are normalized per spatial period: `sum_m mean(|a_m|^2 + |b_m|^2) = 1`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::classical_field::BasisAngle;
use crate::density::SampledAmplitudes;
use crate::error::{invalid, Error, Result};
use crate::linalg::{hermitian_eigen, symmetric_eigenvalues};
use crate::hilbert::{interior_vector_norm, AtomLevel, BasisState, SparseOperator, TruncatedSpace};
use crate::operators::{h_total, p_total, t_op, SystemParams};

/// Relative cluster tolerance for grouping `P` eigenvalues.
pub const CLUSTER_TOL: f64 = 1e-9;

/// Rows within this distance of the cutoff are excluded from residuals.
const RESIDUAL_MARGIN: usize = 1;

/// Fourier coefficients of `a_m(eta)` and `b_m(eta)` on `e^{i(q+n) eta}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmplitudeField {
    pub n_excitations: usize,
    pub q: f64,
    pub n_max: usize,
    /// `a[m][n + n_max]`, `m = 0..=N`.
    pub a: Vec<Vec<C64>>,
    /// `b[m][n + n_max]`, `m = 0..N`.
    pub b: Vec<Vec<C64>>,
}

impl AmplitudeField {
    pub fn from_vector(space: &TruncatedSpace, v: &DVector<C64>) -> Self {
        let grid = space.grid_len();
        let mut a = vec![vec![C64::default(); grid]; space.n_excitations() + 1];
        let mut b = vec![vec![C64::default(); grid]; space.n_excitations()];
        for (i, s) in space.states().enumerate() {
            let slot = (s.n + space.n_max() as i64) as usize;
            match s.level {
                AtomLevel::Lower => a[s.m][slot] = v[i],
                AtomLevel::Upper => b[s.m][slot] = v[i],
            }
        }
        AmplitudeField { n_excitations: space.n_excitations(), q: space.q(), n_max: space.n_max(), a, b }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.iter().chain(&self.b).flatten().map(|c| c.norm_sqr()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct StationaryState {
    /// Absolute energy in recoil units.
    pub energy: f64,
    /// `energy - N Omega`.
    pub energy_rel: f64,
    pub momentum: f64,
    pub n_excitations: usize,
    pub alpha: BasisAngle,
    pub residual_h: f64,
    pub residual_p: f64,
    /// Eigenvalue of the combined operator `T`.
    pub t_eigenvalue: C64,
    pub vector: DVector<C64>,
    pub amplitudes: AmplitudeField,
}

impl StationaryState {
    /// Weight on the lower atomic level.
    pub fn lower_weight(&self) -> f64 {
        self.amplitudes.a.iter().flatten().map(|c| c.norm_sqr()).sum()
    }

    pub fn to_record(&self) -> StateRecord {
        let space = TruncatedSpace::new(self.n_excitations as i64, self.amplitudes.q, self.amplitudes.n_max)
            .expect("state built on a valid space");
        let coefficients = space
            .states()
            .zip(self.vector.iter())
            .filter(|(_, c)| c.norm() > 1e-14)
            .map(|(s, c)| CoefficientRecord {
                level: s.level,
                m: s.m,
                atom_momentum: space.momentum(s),
                re: c.re,
                im: c.im,
            })
            .collect();
        StateRecord {
            eps: self.energy,
            eps_rel: self.energy_rel,
            p: self.momentum,
            n: self.n_excitations,
            alpha: self.alpha.radians(),
            q: self.amplitudes.q,
            residual_h: self.residual_h,
            residual_p: self.residual_p,
            t_re: self.t_eigenvalue.re,
            t_im: self.t_eigenvalue.im,
            normalization: "per-period".into(),
            coefficients,
        }
    }
}

/// Serialized form of a [`StationaryState`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateRecord {
    pub eps: f64,
    pub eps_rel: f64,
    pub p: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: f64,
    pub q: f64,
    pub residual_h: f64,
    pub residual_p: f64,
    pub t_re: f64,
    pub t_im: f64,
    pub normalization: String,
    pub coefficients: Vec<CoefficientRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub level: AtomLevel,
    pub m: usize,
    pub atom_momentum: f64,
    pub re: f64,
    pub im: f64,
}

/// Orthonormal basis (columns) of the `P` eigenspace at momentum `p`.
pub fn momentum_sector(space: &TruncatedSpace, params: &SystemParams, p: f64, tol: f64) -> Result<DMatrix<C64>> {
    if !(tol > 0.0) {
        return Err(invalid("tol", "cluster tolerance must be positive"));
    }
    let eig = hermitian_eigen(&p_total(space, params).to_dense());
    let cols: Vec<DVector<C64>> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| (l - p).abs() <= tol)
        .map(|(k, _)| eig.eigenvectors.column(k).into_owned())
        .collect();
    if cols.is_empty() {
        return Ok(DMatrix::zeros(space.dim(), 0));
    }
    Ok(DMatrix::from_columns(&cols))
}

fn cluster_tol(space: &TruncatedSpace, params: &SystemParams) -> f64 {
    // ||P|| bounded by the largest |q + n| plus the field momentum N
    let scale = space.q().abs() + space.n_max() as f64 + params.n_excitations as f64;
    CLUSTER_TOL * scale.max(1.0)
}

/// Lowest `k_eigs` joint eigenstates of `H` and `P` at momentum `p`,
/// sorted by energy.
pub fn solve_joint(space: &TruncatedSpace, params: &SystemParams, p: f64, k_eigs: usize) -> Result<Vec<StationaryState>> {
    let sector = momentum_sector(space, params, p, cluster_tol(space, params))?;
    if sector.ncols() == 0 {
        return Err(Error::NoStatesAtMomentum { p });
    }
    let h = h_total(space, params);
    let pt = p_total(space, params);
    let t = t_op(space);
    let hv = h.to_dense() * &sector;
    let projected = sector.adjoint() * hv;
    // symmetrize against round-off before the Hermitian solver
    let projected = (&projected + projected.adjoint()).scale(0.5);
    let eig = hermitian_eigen(&projected);

    Ok((0..eig.eigenvalues.len())
        .take(k_eigs)
        .map(|k| {
            let energy = eig.eigenvalues[k];
            let mut psi = &sector * eig.eigenvectors.column(k);
            psi /= C64::new(psi.norm(), 0.0);
            lift_state(space, params, &h, &pt, &t, energy, p, psi)
        })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn lift_state(
    space: &TruncatedSpace,
    params: &SystemParams,
    h: &SparseOperator,
    pt: &SparseOperator,
    t: &SparseOperator,
    energy: f64,
    p: f64,
    psi: DVector<C64>,
) -> StationaryState {
    let r_h = h.apply(&psi) - &psi * C64::new(energy, 0.0);
    let r_p = pt.apply(&psi) - &psi * C64::new(p, 0.0);
    let t_eigenvalue = psi.dotc(&t.apply(&psi));
    StationaryState {
        energy,
        energy_rel: energy - params.photon_offset(),
        momentum: p,
        n_excitations: params.n_excitations,
        alpha: params.alpha,
        residual_h: interior_vector_norm(space, &r_h, RESIDUAL_MARGIN),
        residual_p: interior_vector_norm(space, &r_p, RESIDUAL_MARGIN),
        t_eigenvalue,
        amplitudes: AmplitudeField::from_vector(space, &psi),
        vector: psi,
    }
}

/// Constant-amplitude eigensystem at `alpha = 0`. Energies relative to
/// `N Omega`.
#[derive(Clone, Debug)]
pub struct TravelingSystem {
    pub matrix: DMatrix<f64>,
    /// `(level, m, atom momentum)` per row.
    pub labels: Vec<(AtomLevel, usize, f64)>,
    /// Ascending.
    pub energies: Vec<f64>,
}

/// Builds the closed system over `(a_0..a_N, b_0..b_{N-1})`. Lower `m` has
/// atom momentum `p - (2m - N)`, upper `m` has `p - (2m - N + 1)`; mode 1
/// couples lower `m` to upper `m - 1` with `-zeta sqrt(m)`, mode 2 couples
/// lower `m` to upper `m` with `-zeta sqrt(N - m)`.
pub fn reduce_traveling(params: &SystemParams, p: f64) -> Result<TravelingSystem> {
    if params.alpha.radians() != 0.0 {
        return Err(invalid("alpha", "the constant-amplitude reduction needs the traveling-wave basis alpha = 0"));
    }
    let n = params.n_excitations;
    let nf = n as f64;
    let mut labels = Vec::with_capacity(2 * n + 1);
    for m in 0..=n {
        labels.push((AtomLevel::Lower, m, p - (2.0 * m as f64 - nf)));
    }
    for m in 0..n {
        labels.push((AtomLevel::Upper, m, p - (2.0 * m as f64 - nf + 1.0)));
    }
    let dim = labels.len();
    let mut matrix = DMatrix::zeros(dim, dim);
    for (i, &(level, _, k)) in labels.iter().enumerate() {
        matrix[(i, i)] = k * k + if level == AtomLevel::Upper { params.delta } else { 0.0 };
    }
    for m in 0..=n {
        let low = m;
        if m > 0 {
            let up = n + 1 + (m - 1);
            let v = -params.zeta * (m as f64).sqrt();
            matrix[(low, up)] = v;
            matrix[(up, low)] = v;
        }
        if m < n {
            let up = n + 1 + m;
            let v = -params.zeta * ((n - m) as f64).sqrt();
            matrix[(low, up)] = v;
            matrix[(up, low)] = v;
        }
    }
    let energies = symmetric_eigenvalues(&matrix);
    Ok(TravelingSystem { matrix, labels, energies })
}

/// Synthesizes `a_m(eta)`, `b_m(eta)` on a uniform grid over `[0, 2 pi)`.
pub fn amplitudes_on_grid(state: &StationaryState, n_samples: usize) -> Result<SampledAmplitudes> {
    let field = &state.amplitudes;
    let required = 2 * (2 * field.n_max + 1);
    if n_samples < required {
        return Err(Error::Undersampled { given: n_samples, required });
    }
    let eta = SampledAmplitudes::uniform_grid(n_samples);
    let synth = |coeffs: &Vec<C64>| -> Vec<C64> {
        eta.iter()
            .map(|&x| {
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.norm() > 0.0)
                    .map(|(k, c)| c * C64::from_polar(1.0, (field.q + k as f64 - field.n_max as f64) * x))
                    .sum()
            })
            .collect()
    };
    Ok(SampledAmplitudes {
        a: field.a.iter().map(synth).collect(),
        b: field.b.iter().map(synth).collect(),
        eta,
    })
}

/// Energies (relative to `N Omega`) at one point of a Brillouin scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanPoint {
    pub q: f64,
    pub p: f64,
    pub energies_rel: Vec<f64>,
}

/// Scans the momentum offset `q`, solving at total momentum `p = q`.
///
/// A momentum sector is non-empty only when `p - q` is an integer, so the
/// offset and the total momentum move together. For the standing-wave
/// lattice (period `pi`) one zone is `q in [-1, 1]`.
pub fn brillouin_scan(params: &SystemParams, n_max: usize, q_values: &[f64], k_eigs: usize) -> Result<Vec<ScanPoint>> {
    q_values
        .iter()
        .map(|&q| {
            let space = params.space(q, n_max)?;
            let states = solve_joint(&space, params, q, k_eigs)?;
            Ok(ScanPoint { q, p: q, energies_rel: states.iter().map(|s| s.energy_rel).collect() })
        })
        .collect()
}

/// Energy intervals `(lower, upper)` that no scanned branch enters. Branch
/// `k` is the `k`-th lowest energy at each scan point.
pub fn scan_gaps(points: &[ScanPoint]) -> Vec<(f64, f64)> {
    let n_branches = points.iter().map(|p| p.energies_rel.len()).min().unwrap_or(0);
    let mut ranges: Vec<(f64, f64)> = (0..n_branches)
        .map(|b| {
            points.iter().map(|p| p.energies_rel[b]).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
                (lo.min(e), hi.max(e))
            })
        })
        .collect();
    ranges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut gaps = Vec::new();
    let mut reach = f64::NEG_INFINITY;
    for (lo, hi) in ranges {
        if reach.is_finite() && lo > reach {
            gaps.push((reach, lo));
        }
        reach = reach.max(hi);
    }
    gaps
}

/// Projector check used by tests and the verify command.
pub fn sector_state(space: &TruncatedSpace, level: AtomLevel, m: usize, n: i64) -> Option<usize> {
    space.index(BasisState { level, m, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{reduced_density, uniformity};
    use std::f64::consts::FRAC_PI_4;

    fn params(alpha: f64, zeta: f64, delta: f64, n: usize) -> SystemParams {
        SystemParams::new(100.0, delta, zeta, BasisAngle::new(alpha), n).unwrap()
    }

    #[test]
    fn traveling_sector_matches_plane_wave_pattern() {
        let p = params(0.0, 1.0, 50.0, 1);
        let space = p.space(0.5, 8).unwrap();
        let v = momentum_sector(&space, &p, 0.5, 1e-9).unwrap();
        assert_eq!(v.ncols(), 3);
        let mut support: Vec<(AtomLevel, usize, f64)> = (0..v.ncols())
            .flat_map(|c| {
                let col = v.column(c).into_owned();
                space
                    .states()
                    .zip(col.iter().copied().collect::<Vec<_>>())
                    .filter(|(_, x)| x.norm() > 1e-12)
                    .map(|(s, _)| (s.level, s.m, space.momentum(s)))
                    .collect::<Vec<_>>()
            })
            .collect();
        support.sort_by(|a, b| a.2.total_cmp(&b.2));
        assert_eq!(
            support,
            vec![(AtomLevel::Lower, 1, -0.5), (AtomLevel::Upper, 0, 0.5), (AtomLevel::Lower, 0, 1.5)]
        );
        // P does not see the coupling
        let w = momentum_sector(&space, &params(0.0, 7.0, 50.0, 1), 0.5, 1e-9).unwrap();
        assert_eq!(w.ncols(), 3);
        assert!(momentum_sector(&space, &p, 0.5, 0.0).is_err());
    }

    #[test]
    fn standing_sector_mixes_modes_equally() {
        let p = params(FRAC_PI_4, 1.0, 50.0, 1);
        let space = p.space(0.0, 6).unwrap();
        let v = momentum_sector(&space, &p, 0.0, 1e-9).unwrap();
        assert_eq!(v.ncols(), 3);
        // projector onto the sector is basis independent: compare block weights
        let proj = &v * v.adjoint();
        for n in [-1i64, 1] {
            let i0 = sector_state(&space, AtomLevel::Lower, 0, n).unwrap();
            let i1 = sector_state(&space, AtomLevel::Lower, 1, n).unwrap();
            assert!((proj[(i0, i0)].re - 0.5).abs() < 1e-12);
            assert!((proj[(i1, i1)].re - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_sector_is_reported() {
        let p = params(0.0, 1.0, 50.0, 1);
        let space = p.space(0.0, 6).unwrap();
        assert!(matches!(solve_joint(&space, &p, 0.3, 3), Err(Error::NoStatesAtMomentum { .. })));
    }

    #[test]
    fn free_limit_is_degenerate() {
        let p = params(0.0, 0.0, 50.0, 1);
        let space = p.space(0.0, 8).unwrap();
        let e: Vec<f64> = solve_joint(&space, &p, 0.0, 3).unwrap().iter().map(|s| s.energy_rel).collect();
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12 && (e[2] - 50.0).abs() < 1e-12);
    }

    #[test]
    fn resonant_coupling_against_hand_diagonalization() {
        // 3x3 [[1,0,-1],[0,1,-1],[-1,-1,0]]: antisymmetric pair stays at 1,
        // symmetric pair [[1,-sqrt2],[-sqrt2,0]] gives (1 +- 3)/2
        let p = params(0.0, 1.0, 0.0, 1);
        let space = p.space(0.0, 8).unwrap();
        let e: Vec<f64> = solve_joint(&space, &p, 0.0, 3).unwrap().iter().map(|s| s.energy_rel).collect();
        for (got, want) in e.iter().zip([-1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn states_are_joint_eigenvectors_and_label_t() {
        for alpha in [0.0, 0.3, FRAC_PI_4] {
            for (zeta, delta) in [(1.0, 100.0), (3.0, 5.0), (0.5, -20.0)] {
                for n_exc in [1, 2] {
                    for p in [0.0, 0.4, -1.3] {
                        let pr = params(alpha, zeta, delta, n_exc);
                        let space = pr.space(p, 10).unwrap();
                        for s in solve_joint(&space, &pr, p, 2 * n_exc + 1).unwrap() {
                            assert!(s.residual_h + s.residual_p < 1e-8, "alpha {alpha} p {p} zeta {zeta} N {n_exc} rh {} rp {}", s.residual_h, s.residual_p);
                            assert!((s.amplitudes.norm_sqr() - 1.0).abs() < 1e-12);
                            assert!((s.t_eigenvalue.norm() - 1.0).abs() < 1e-10);
                            if p == 0.0 {
                                assert!(s.t_eigenvalue.im.abs() < 1e-10);
                                assert!((s.t_eigenvalue.re.abs() - 1.0).abs() < 1e-10);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn traveling_reduction_agrees_with_full_solver() {
        for n_exc in [1usize, 2] {
            for p in [0.0, 0.4, 1.2] {
                let pr = params(0.0, 1.3, 7.0, n_exc);
                let red = reduce_traveling(&pr, p).unwrap();
                assert_eq!(red.energies.len(), 2 * n_exc + 1);
                let space = pr.space(p, 10).unwrap();
                let full = solve_joint(&space, &pr, p, 2 * n_exc + 1).unwrap();
                for (s, e) in full.iter().zip(&red.energies) {
                    assert!((s.energy_rel - e).abs() < 1e-8);
                }
            }
        }
        let red = reduce_traveling(&params(0.0, 0.0, 7.0, 1), 0.3).unwrap();
        let diag: Vec<f64> = (0..3).map(|i| red.matrix[(i, i)]).collect();
        assert_eq!(diag, vec![1.3f64.powi(2), 0.7f64.powi(2), 0.09 + 7.0]);
        assert!(reduce_traveling(&params(0.3, 1.0, 7.0, 1), 0.0).is_err());
    }

    #[test]
    fn energies_converged_in_cutoff() {
        let pr = params(FRAC_PI_4, 2.0, 30.0, 2);
        let e = |n_max| -> Vec<f64> {
            let space = pr.space(0.2, n_max).unwrap();
            solve_joint(&space, &pr, 0.2, 5).unwrap().iter().map(|s| s.energy).collect()
        };
        for (a, b) in e(12).iter().zip(e(16)) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn spectrum_does_not_depend_on_basis_angle() {
        // H and P at any alpha are related by a rotation of the photon modes
        let e = |alpha: f64| -> Vec<f64> {
            let pr = params(alpha, 2.0, 30.0, 2);
            let space = pr.space(0.3, 10).unwrap();
            solve_joint(&space, &pr, 0.3, 5).unwrap().iter().map(|s| s.energy).collect()
        };
        let reference = e(0.0);
        for alpha in [0.3, FRAC_PI_4, 1.1] {
            for (a, b) in e(alpha).iter().zip(&reference) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn grid_synthesis() {
        let pr = params(0.0, 1.0, 40.0, 2);
        let space = pr.space(0.25, 6).unwrap();
        let states = solve_joint(&space, &pr, 0.25, 5).unwrap();
        assert!(amplitudes_on_grid(&states[0], 20).is_err());
        for s in &states {
            let g = amplitudes_on_grid(s, 64).unwrap();
            assert!((g.period_norm() - 1.0).abs() < 1e-12);
            // every component is a single plane wave
            for c in g.a.iter().chain(&g.b) {
                let m0 = c[0].norm();
                assert!(c.iter().all(|v| (v.norm() - m0).abs() < 1e-12));
            }
            assert!(uniformity(&reduced_density(&g)) < 1e-10);
        }
    }

    #[test]
    fn scan_gap_detection() {
        let pts = vec![
            ScanPoint { q: 0.0, p: 0.0, energies_rel: vec![0.0, 1.0] },
            ScanPoint { q: 0.5, p: 0.5, energies_rel: vec![-0.3, 1.6] },
        ];
        assert_eq!(scan_gaps(&pts), vec![(0.0, 1.0)]);
    }
}
