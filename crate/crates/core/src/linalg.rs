//! Dense Hermitian eigen-decomposition by cyclic Jacobi rotations.
//!
//! The matrices here are small (a few hundred rows at most) and often
//! highly degenerate; Jacobi gives eigenvectors with residuals at the level
//! of machine precision, which the joint-eigenstate checks rely on.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

const MAX_SWEEPS: usize = 64;

pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: DVector<f64>,
    /// Columns match `eigenvalues`.
    pub eigenvectors: DMatrix<C64>,
}

pub fn hermitian_eigen(matrix: &DMatrix<C64>) -> HermitianEigen {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    let mut a = matrix.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    let scale = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let pc = phase.conj();
                // A <- A U,  U = [[c, s], [-s conj(phase), c conj(phase)]]
                for k in 0..n {
                    let (x, y) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = x * c - y * pc * s;
                    a[(k, q)] = x * s + y * pc * c;
                }
                // A <- U^dag A
                for k in 0..n {
                    let (x, y) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = x * c - y * phase * s;
                    a[(q, k)] = x * s + y * phase * c;
                }
                a[(p, q)] = C64::default();
                a[(q, p)] = C64::default();
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let (x, y) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = x * c - y * pc * s;
                    v[(k, q)] = x * s + y * pc * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    HermitianEigen {
        eigenvalues: DVector::from_iterator(n, order.iter().map(|&i| a[(i, i)].re)),
        eigenvectors: DMatrix::from_columns(&order.iter().map(|&i| v.column(i).into_owned()).collect::<Vec<_>>()),
    }
}

pub fn symmetric_eigenvalues(matrix: &DMatrix<f64>) -> Vec<f64> {
    hermitian_eigen(&matrix.map(|x| C64::new(x, 0.0))).eigenvalues.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn residual(m: &DMatrix<C64>, e: &HermitianEigen) -> f64 {
        let d = DMatrix::from_diagonal(&e.eigenvalues.map(|x| C64::new(x, 0.0)));
        (m * &e.eigenvectors - &e.eigenvectors * d).norm()
    }

    #[test]
    fn near_degenerate_block() {
        // shifted far from zero with a near-degenerate pair
        let m = DMatrix::from_row_slice(3, 3, &[101.0, 0.0, -0.5, 0.0, 101.0, -0.5, -0.5, -0.5, 80.0])
            .map(|x| C64::new(x, 0.0));
        let e = hermitian_eigen(&m);
        assert!(residual(&m, &e) < 1e-12);
        let split = (10.5f64 * 10.5 + 0.5).sqrt();
        assert!((e.eigenvalues[0] - (90.5 - split)).abs() < 1e-12);
        assert!((e.eigenvalues[1] - 101.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn random_hermitian(entries in proptest::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 36)) {
            let mut m = DMatrix::from_fn(6, 6, |i, j| C64::new(entries[6 * i + j].0, entries[6 * i + j].1));
            m = (&m + m.adjoint()).scale(0.5);
            let e = hermitian_eigen(&m);
            prop_assert!(residual(&m, &e) < 1e-11);
            let gram = e.eigenvectors.adjoint() * &e.eigenvectors;
            prop_assert!((gram - DMatrix::identity(6, 6)).norm() < 1e-12);
            prop_assert!(e.eigenvalues.as_slice().windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
