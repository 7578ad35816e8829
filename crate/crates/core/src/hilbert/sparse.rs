use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::space::TruncatedSpace;
use crate::error::{Error, Result};

/// Row-compressed complex matrix on a [`TruncatedSpace`].
///
/// Rows hold `(column, value)` pairs sorted by column, without duplicates
/// and without explicit zeros.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    space: TruncatedSpace,
    rows: Vec<Vec<(usize, C64)>>,
}

impl SparseOperator {
    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(space: TruncatedSpace, triplets: impl IntoIterator<Item = (usize, usize, C64)>) -> Self {
        let dim = space.dim();
        let mut acc: Vec<BTreeMap<usize, C64>> = vec![BTreeMap::new(); dim];
        for (i, j, v) in triplets {
            assert!(i < dim && j < dim, "entry ({i}, {j}) outside dimension {dim}");
            *acc[i].entry(j).or_default() += v;
        }
        let rows = acc
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| *v != C64::new(0.0, 0.0)).collect())
            .collect();
        SparseOperator { space, rows }
    }

    pub fn zero(space: TruncatedSpace) -> Self {
        SparseOperator { space, rows: vec![Vec::new(); space.dim()] }
    }

    pub fn diagonal(space: TruncatedSpace, f: impl Fn(usize) -> C64) -> Self {
        Self::from_triplets(space, (0..space.dim()).map(|i| (i, i, f(i))))
    }

    pub fn identity(space: TruncatedSpace) -> Self {
        Self::diagonal(space, |_| C64::new(1.0, 0.0))
    }

    pub fn space(&self) -> &TruncatedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.rows[i][k].1)
            .unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_triplets(self.space, self.entries().map(|(i, j, v)| (i, j, v * s)))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.space, self.entries().map(|(i, j, v)| (j, i, v.conj())))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        Ok(Self::from_triplets(self.space, self.entries().chain(other.entries())))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        Ok(Self::from_triplets(
            self.space,
            self.entries().chain(other.entries().map(|(i, j, v)| (i, j, -v))),
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut triplets = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    triplets.push((i, j, a * b));
                }
            }
        }
        Ok(Self::from_triplets(self.space, triplets))
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        assert_eq!(v.len(), self.dim());
        DVector::from_iterator(
            self.dim(),
            self.rows.iter().map(|r| r.iter().map(|&(j, a)| a * v[j]).sum()),
        )
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (i, j, v) in self.entries() {
            m[(i, j)] = v;
        }
        m
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// `true` when every nonzero lies on the diagonal.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.entries().all(|(i, j, v)| i == j || v.norm() <= tol)
    }
}

impl Add for &SparseOperator {
    type Output = SparseOperator;
    fn add(self, rhs: &SparseOperator) -> SparseOperator {
        self.try_add(rhs).expect("operators on different spaces")
    }
}

impl Sub for &SparseOperator {
    type Output = SparseOperator;
    fn sub(self, rhs: &SparseOperator) -> SparseOperator {
        self.try_sub(rhs).expect("operators on different spaces")
    }
}

impl Mul for &SparseOperator {
    type Output = SparseOperator;
    fn mul(self, rhs: &SparseOperator) -> SparseOperator {
        self.try_mul(rhs).expect("operators on different spaces")
    }
}

/// `AB - BA`.
pub fn commutator(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// `max |A - A^dagger|`.
pub fn hermiticity_defect(a: &SparseOperator) -> f64 {
    (a - &a.adjoint()).max_norm()
}

/// Max-norm over entries whose row and column states both satisfy
/// `|n| <= n_max - margin`, which masks the absorbing truncation edge.
pub fn interior_norm(a: &SparseOperator, margin: usize) -> f64 {
    let space = *a.space();
    a.entries()
        .filter(|&(i, j, _)| space.is_interior(space.state(i), margin) && space.is_interior(space.state(j), margin))
        .map(|(_, _, v)| v.norm())
        .fold(0.0, f64::max)
}

/// Euclidean norm of `v` restricted to interior rows.
pub fn interior_vector_norm(space: &TruncatedSpace, v: &DVector<C64>, margin: usize) -> f64 {
    v.iter()
        .enumerate()
        .filter(|(i, _)| space.is_interior(space.state(*i), margin))
        .map(|(_, x)| x.norm_sqr())
        .sum::<f64>()
        .sqrt()
}
