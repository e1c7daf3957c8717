//! Spectral variational multiscale (VMS) stabilization for 1D
//! advection-diffusion-reaction problems.
//!
//! The sub-grid scales on each element are expanded in the eigenfunctions of the
//! element operator and truncated to `M` modes. The crate provides the P1 Galerkin
//! building blocks, the spectral sub-grid matrices, the bubble-based stabilization
//! coefficient, stationary and backward Euler solvers, error analysis and the
//! experiment harness behind the `spectral-vms` binary.

pub mod analysis;
pub mod config;
pub mod csv;
pub mod error;
pub mod fem;
pub mod green;
pub mod harness;
pub mod quadrature;
pub mod solvers;
pub mod spectral;
pub mod stabilization;
pub mod tridiag;

pub use error::{Result, VmsError};
pub use fem::{build_mesh, Mesh1D};
pub use solvers::{
    solve_evolutive, solve_stationary, AffineSource, EvolutiveProblem, InitialCondition,
    SolutionTrajectory, SolverMode, StationaryProblem, TauChoice,
};
pub use spectral::{ElementSpectralBasis, OperatorScaling};
pub use tridiag::{thomas_solve, TridiagonalMatrix};
