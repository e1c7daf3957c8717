//! Sub-grid matrices and stabilized right-hand sides.
//!
//! With `P_j[a] = (phi_a, p z_j)` and `Z_j[b] = (phi_b, z_j)` on one element, the
//! local blocks are `B1[a][b] = sum_j beta_j P_j[a] Z_j[b]` and likewise with the
//! derivative moments for `B2` (`P'`, `Z`), `B3` (`P`, `Z'`) and `B4` (`P'`, `Z'`).
//! Global entries `B[l][m]` follow the same order: `l` pairs with `p z_j`.

use crate::error::{Result, VmsError};
use crate::fem::{assemble_uniform, assemble_vector, LocalMatrix, Mesh1D};
use crate::spectral::{ElementSpectralBasis, OperatorScaling};
use crate::tridiag::TridiagonalMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LocalBlocks {
    pub b1: LocalMatrix,
    pub b2: LocalMatrix,
    pub b3: LocalMatrix,
    pub b4: LocalMatrix,
}

impl LocalBlocks {
    pub fn from_basis(basis: &ElementSpectralBasis) -> Self {
        let mut out = LocalBlocks::default();
        for mode in &basis.modes {
            let m = basis
                .moments(mode.j)
                .expect("mode index taken from the basis itself");
            let beta = mode.beta;
            for a in 0..2 {
                for b in 0..2 {
                    out.b1[a][b] += beta * m.p[a] * m.z[b];
                    out.b2[a][b] += beta * m.dp[a] * m.z[b];
                    out.b3[a][b] += beta * m.p[a] * m.dz[b];
                    out.b4[a][b] += beta * m.dp[a] * m.dz[b];
                }
            }
        }
        out
    }

    /// Local contribution to the system matrix, indexed `[test][trial]`:
    /// the transpose of `-g^2 B1 - c g B2 + c g B3 + c^2 B4`.
    pub fn system_matrix(&self, scaling: &OperatorScaling) -> LocalMatrix {
        let g = scaling.gamma_eff;
        let c = scaling.c_eff;
        let mut out = [[0.0; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                out[b][a] = -g * g * self.b1[a][b] - c * g * self.b2[a][b]
                    + c * g * self.b3[a][b]
                    + c * c * self.b4[a][b];
            }
        }
        out
    }

    /// Map from element traces of the residual data `R` to the two parts of the
    /// local stabilized right-hand side:
    /// `s1[a] = -g sum_j beta_j (R, p z_j)(phi_a, z_j)` and
    /// `s2[a] = c sum_j beta_j (R, p z_j)(phi_a', z_j)`.
    pub fn rhs_parts(&self, scaling: &OperatorScaling, residual: [f64; 2]) -> ([f64; 2], [f64; 2]) {
        let g = scaling.gamma_eff;
        let c = scaling.c_eff;
        let mut s1 = [0.0; 2];
        let mut s2 = [0.0; 2];
        for a in 0..2 {
            for (b, r) in residual.iter().enumerate() {
                s1[a] -= g * r * self.b1[b][a];
                s2[a] += c * r * self.b3[b][a];
            }
        }
        (s1, s2)
    }

    /// Linear map `R -> s1 + s2` as a matrix indexed `[test][residual trace]`.
    pub fn rhs_matrix(&self, scaling: &OperatorScaling) -> LocalMatrix {
        let g = scaling.gamma_eff;
        let c = scaling.c_eff;
        let mut out = [[0.0; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                out[a][b] = -g * self.b1[b][a] + c * self.b3[b][a];
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizationBlocks {
    pub b1: TridiagonalMatrix,
    pub b2: TridiagonalMatrix,
    pub b3: TridiagonalMatrix,
    pub b4: TridiagonalMatrix,
    pub rhs_s1: Vec<f64>,
    pub rhs_s2: Vec<f64>,
}

impl StabilizationBlocks {
    /// Sub-grid contribution to the system matrix (row = test function).
    pub fn system_matrix(&self, scaling: &OperatorScaling) -> TridiagonalMatrix {
        let g = scaling.gamma_eff;
        let c = scaling.c_eff;
        let mut out = self.b1.scaled(-g * g);
        out.add_scaled(-c * g, &self.b2);
        out.add_scaled(c * g, &self.b3);
        out.add_scaled(c * c, &self.b4);
        out.transpose()
    }

    pub fn rhs(&self) -> Vec<f64> {
        self.rhs_s1
            .iter()
            .zip(&self.rhs_s2)
            .map(|(a, b)| a + b)
            .collect()
    }
}

/// Assembles the sub-grid blocks on a uniform mesh.
///
/// `basis` is the spectral basis of any one element (all elements are congruent).
/// `residual` holds the element traces of the affine data driving the sub-scales:
/// the source `f` for the stationary problem, `k f + U^n` for one backward Euler step.
pub fn assemble_stabilization(
    mesh: &Mesh1D,
    basis: &ElementSpectralBasis,
    residual: &[[f64; 2]],
) -> Result<StabilizationBlocks> {
    if (basis.h() - mesh.h()).abs() > 1e-12 * mesh.h() {
        return Err(VmsError::DimensionMismatch(format!(
            "basis element length {} differs from mesh size {}",
            basis.h(),
            mesh.h()
        )));
    }
    if residual.len() != mesh.n_elements() {
        return Err(VmsError::DimensionMismatch(format!(
            "{} residual traces for {} elements",
            residual.len(),
            mesh.n_elements()
        )));
    }
    let local = LocalBlocks::from_basis(basis);
    let mut s1 = Vec::with_capacity(residual.len());
    let mut s2 = Vec::with_capacity(residual.len());
    for &r in residual {
        let (a, b) = local.rhs_parts(&basis.scaling, r);
        s1.push(a);
        s2.push(b);
    }
    Ok(StabilizationBlocks {
        b1: assemble_uniform(mesh, &local.b1),
        b2: assemble_uniform(mesh, &local.b2),
        b3: assemble_uniform(mesh, &local.b3),
        b4: assemble_uniform(mesh, &local.b4),
        rhs_s1: assemble_vector(mesh, &s1),
        rhs_s2: assemble_vector(mesh, &s2),
    })
}
