//! Tridiagonal storage and the Thomas algorithm.

use crate::error::{Result, VmsError};

/// Square tridiagonal matrix stored by diagonals.
///
/// `sub[i]` is entry `(i + 1, i)`, `diag[i]` is `(i, i)` and `sup[i]` is `(i, i + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            sub: vec![0.0; dim.saturating_sub(1)],
            diag: vec![0.0; dim],
            sup: vec![0.0; dim.saturating_sub(1)],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.diag.iter_mut().for_each(|d| *d = 1.0);
        m
    }

    pub fn from_diagonals(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 || sub.len() + 1 != n || sup.len() + 1 != n {
            return Err(VmsError::DimensionMismatch(format!(
                "diagonals of lengths ({}, {}, {})",
                sub.len(),
                n,
                sup.len()
            )));
        }
        Ok(Self { sub, diag, sup })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Entry `(row, col)`, zero outside the band.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        if row == col {
            self.diag[row]
        } else if row == col + 1 {
            self.sub[col]
        } else if col == row + 1 {
            self.sup[row]
        } else {
            0.0
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            sub: self.sup.clone(),
            diag: self.diag.clone(),
            sup: self.sub.clone(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let s = |v: &[f64]| v.iter().map(|x| x * factor).collect();
        Self {
            sub: s(&self.sub),
            diag: s(&self.diag),
            sup: s(&self.sup),
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: f64, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "tridiagonal dimension mismatch");
        let axpy = |dst: &mut [f64], src: &[f64]| {
            dst.iter_mut().zip(src).for_each(|(d, s)| *d += factor * s)
        };
        axpy(&mut self.sub, &other.sub);
        axpy(&mut self.diag, &other.diag);
        axpy(&mut self.sup, &other.sup);
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.sub[i - 1].abs();
                }
                if i + 1 < self.dim() {
                    s += self.sup[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// LU factorization without pivoting, reusable for many right-hand sides.
    pub fn factor(&self) -> Result<TridiagonalLu> {
        let n = self.dim();
        let mut upper_diag = vec![0.0; n];
        let mut lower = vec![0.0; n.saturating_sub(1)];
        upper_diag[0] = self.diag[0];
        if upper_diag[0] == 0.0 || !upper_diag[0].is_finite() {
            return Err(VmsError::SingularPivot { index: 0 });
        }
        for i in 1..n {
            let l = self.sub[i - 1] / upper_diag[i - 1];
            lower[i - 1] = l;
            upper_diag[i] = self.diag[i] - l * self.sup[i - 1];
            if upper_diag[i] == 0.0 || !upper_diag[i].is_finite() {
                return Err(VmsError::SingularPivot { index: i });
            }
        }
        Ok(TridiagonalLu {
            lower,
            upper_diag,
            sup: self.sup.clone(),
        })
    }

    /// Solves `self * x = rhs` with the Thomas algorithm.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        self.factor()?.solve(rhs)
    }
}

/// Stored Thomas factorization `A = L U`.
#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    lower: Vec<f64>,
    upper_diag: Vec<f64>,
    sup: Vec<f64>,
}

impl TridiagonalLu {
    pub fn dim(&self) -> usize {
        self.upper_diag.len()
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if rhs.len() != n {
            return Err(VmsError::DimensionMismatch(format!(
                "rhs has length {}, matrix has dimension {n}",
                rhs.len()
            )));
        }
        let mut y = rhs.to_vec();
        for i in 1..n {
            y[i] -= self.lower[i - 1] * y[i - 1];
        }
        y[n - 1] /= self.upper_diag[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = (y[i] - self.sup[i] * y[i + 1]) / self.upper_diag[i];
        }
        Ok(y)
    }
}

/// Free-function form of [`TridiagonalMatrix::solve`].
pub fn thomas_solve(matrix: &TridiagonalMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    matrix.solve(rhs)
}
