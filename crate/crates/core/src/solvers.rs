//! Galerkin, spectral VMS and tau-form VMS solvers for the stationary
//! advection-diffusion-reaction problem and backward Euler advection-diffusion.

use crate::error::{ensure_finite, ensure_positive, Result, VmsError};
use crate::fem::{
    assemble_galerkin, assemble_uniform, assemble_vector, galerkin_load, local_mass, ElementTraces,
    LocalMatrix, Mesh1D,
};
use crate::green::{tau_exact, tau_truncated};
use crate::spectral::{ElementSpectralBasis, OperatorScaling};
use crate::stabilization::{assemble_stabilization, LocalBlocks};
use crate::tridiag::{TridiagonalLu, TridiagonalMatrix};

/// `f(x) = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AffineSource {
    pub slope: f64,
    pub intercept: f64,
}

impl AffineSource {
    pub fn new(slope: f64, intercept: f64) -> Self {
        Self { slope, intercept }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    pub fn traces(&self, mesh: &Mesh1D) -> ElementTraces {
        (0..mesh.n_elements())
            .map(|e| {
                let (a, b) = mesh.element(e);
                [self.eval(a), self.eval(b)]
            })
            .collect()
    }
}

/// `gamma u + c u' - mu u'' = source` on (0, 1) with `u(0) = u_left`, `u(1) = u_right`.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryProblem {
    pub gamma: f64,
    pub c: f64,
    pub mu: f64,
    pub source: AffineSource,
    pub u_left: f64,
    pub u_right: f64,
}

impl StationaryProblem {
    /// Zero source with boundary values 0 and 1.
    pub fn new(gamma: f64, c: f64, mu: f64) -> Self {
        Self {
            gamma,
            c,
            mu,
            source: AffineSource::zero(),
            u_left: 0.0,
            u_right: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("mu", self.mu)?;
        ensure_finite("c", self.c)?;
        ensure_finite("gamma", self.gamma)?;
        if self.gamma < 0.0 {
            return Err(VmsError::InvalidParameter {
                name: "gamma",
                reason: format!("must be nonnegative, got {}", self.gamma),
            });
        }
        ensure_finite("u_left", self.u_left)?;
        ensure_finite("u_right", self.u_right)?;
        ensure_finite("source", self.source.slope + self.source.intercept)
    }

    /// Affine lift of the boundary data.
    pub fn lift(&self, x: f64) -> f64 {
        self.u_left + (self.u_right - self.u_left) * x
    }

    /// Source of the problem for `u - lift`, which has homogeneous boundary values.
    pub fn homogenized_source(&self) -> AffineSource {
        let jump = self.u_right - self.u_left;
        AffineSource {
            slope: self.source.slope - self.gamma * jump,
            intercept: self.source.intercept - self.gamma * self.u_left - self.c * jump,
        }
    }
}

/// How the stabilization coefficient of the tau-form is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauChoice {
    /// Spectral truncation with the given number of modes.
    Truncated(usize),
    /// Mean of the exact element bubble.
    Exact,
    /// A prescribed value.
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolverMode {
    Galerkin,
    SpectralVms { modes: usize },
    TauVms(TauChoice),
}

/// Solves the stationary problem; returns nodal values including the boundary.
pub fn solve_stationary(problem: &StationaryProblem, mesh: &Mesh1D, mode: SolverMode) -> Result<Vec<f64>> {
    problem.validate()?;
    let StationaryProblem { gamma, c, mu, .. } = *problem;
    let g = assemble_galerkin(mesh);
    let mut a = g.mass.scaled(gamma);
    a.add_scaled(c, &g.convection);
    a.add_scaled(mu, &g.stiffness);
    let f = problem.homogenized_source().traces(mesh);
    let mut b = galerkin_load(mesh, &f);
    match mode {
        SolverMode::Galerkin => {}
        SolverMode::SpectralVms { modes } => {
            let scaling = OperatorScaling::stationary(gamma, c, mu)?;
            let basis = ElementSpectralBasis::new(mesh, 0, scaling, modes)?;
            let blocks = assemble_stabilization(mesh, &basis, &f)?;
            a.add_scaled(1.0, &blocks.system_matrix(&scaling));
            for (bi, si) in b.iter_mut().zip(blocks.rhs()) {
                *bi += si;
            }
        }
        SolverMode::TauVms(_) => {
            return Err(VmsError::InvalidParameter {
                name: "mode",
                reason: "the tau form is available for the evolutive problem only".into(),
            })
        }
    }
    let u = a.solve(&b)?;
    let mut out = mesh.with_boundary(&u, 0.0, 0.0);
    for (v, &x) in out.iter_mut().zip(mesh.nodes()) {
        *v += problem.lift(x);
    }
    out[0] = problem.u_left;
    let last = out.len() - 1;
    out[last] = problem.u_right;
    Ok(out)
}

/// Initial data of the evolutive problem.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// Indicator of `[lo, hi]`.
    Box { lo: f64, hi: f64 },
    /// `sin(pi x)`.
    Sine,
    /// `exp(c x / (2 mu)) sin(pi x)`, which decays without changing shape.
    AdvectedMode,
    /// Nodal values on the solver mesh.
    Nodal(Vec<f64>),
}

impl Default for InitialCondition {
    fn default() -> Self {
        InitialCondition::Box { lo: 0.2, hi: 0.7 }
    }
}

/// Tolerance for deciding whether a node lies inside a box.
const BOX_TOL: f64 = 1e-12;

impl InitialCondition {
    /// Pointwise value for the analytic variants.
    pub fn eval(&self, x: f64, c: f64, mu: f64) -> Option<f64> {
        match self {
            InitialCondition::Box { lo, hi } => {
                Some(if x >= lo - BOX_TOL && x <= hi + BOX_TOL { 1.0 } else { 0.0 })
            }
            InitialCondition::Sine => Some((std::f64::consts::PI * x).sin()),
            InitialCondition::AdvectedMode => {
                Some((c * x / (2.0 * mu)).exp() * (std::f64::consts::PI * x).sin())
            }
            InitialCondition::Nodal(_) => None,
        }
    }

    /// Nodal interpolant, with exact zero boundary values for the smooth variants.
    pub fn nodal(&self, mesh: &Mesh1D, c: f64, mu: f64) -> Result<Vec<f64>> {
        match self {
            InitialCondition::Nodal(v) => {
                if v.len() != mesh.n_nodes() {
                    return Err(VmsError::GridMismatch(format!(
                        "initial field has {} values, mesh has {} nodes",
                        v.len(),
                        mesh.n_nodes()
                    )));
                }
                if v[0] != 0.0 || v[v.len() - 1] != 0.0 {
                    return Err(VmsError::InvalidParameter {
                        name: "u0",
                        reason: "boundary values must be zero".into(),
                    });
                }
                Ok(v.clone())
            }
            InitialCondition::Box { lo, hi } => {
                if !(lo < hi) {
                    return Err(VmsError::InvalidParameter {
                        name: "u0",
                        reason: format!("box bounds must satisfy lo < hi, got [{lo}, {hi}]"),
                    });
                }
                Ok(mesh.sample(|x| self.eval(x, c, mu).unwrap_or(0.0)))
            }
            _ => {
                let mut v = mesh.sample(|x| self.eval(x, c, mu).unwrap_or(0.0));
                let last = v.len() - 1;
                v[0] = 0.0;
                v[last] = 0.0;
                Ok(v)
            }
        }
    }

    /// Element traces used as `U^0` in the first step: the element-wise L2 projection
    /// onto affine functions for the box, the nodal interpolant otherwise.
    pub fn element_traces(&self, mesh: &Mesh1D, c: f64, mu: f64) -> Result<ElementTraces> {
        let nodal = self.nodal(mesh, c, mu)?;
        let InitialCondition::Box { lo, hi } = *self else {
            return Ok(mesh.traces(&nodal));
        };
        let h = mesh.h();
        Ok((0..mesh.n_elements())
            .map(|e| {
                let (a, b) = mesh.element(e);
                let l = a.max(lo);
                let r = b.min(hi);
                if r - l >= h - BOX_TOL {
                    [1.0, 1.0]
                } else if r > l {
                    // Moments m0 = int s, m1 = int s^2/2 of the covered part in local coordinates;
                    // the projection (u0, u1) solves u0/2 + u1/2 = m0, u0/6 + u1/3 = m1.
                    let (sa, sb) = ((l - a) / h, (r - a) / h);
                    let m0 = sb - sa;
                    let m1 = 0.5 * (sb * sb - sa * sa);
                    [4.0 * m0 - 6.0 * m1, 6.0 * m1 - 2.0 * m0]
                } else {
                    [0.0, 0.0]
                }
            })
            .collect())
    }
}

/// `u_t + c u_x - mu u_xx = source` on (0, 1) with zero boundary values.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutiveProblem {
    pub c: f64,
    pub mu: f64,
    pub k: f64,
    pub t_final: f64,
    pub source: AffineSource,
    pub initial: InitialCondition,
}

impl EvolutiveProblem {
    pub fn new(c: f64, mu: f64, k: f64, t_final: f64) -> Self {
        Self {
            c,
            mu,
            k,
            t_final,
            source: AffineSource::zero(),
            initial: InitialCondition::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("mu", self.mu)?;
        ensure_positive("k", self.k)?;
        ensure_finite("c", self.c)?;
        ensure_positive("t_final", self.t_final)?;
        ensure_finite("source", self.source.slope + self.source.intercept)?;
        Ok(())
    }

    /// `N = round(T / k)`, rejecting time grids that do not end at `T`.
    pub fn n_steps(&self) -> Result<usize> {
        self.validate()?;
        let n = (self.t_final / self.k).round();
        if n < 1.0 || (n * self.k - self.t_final).abs() > 1e-12 * self.t_final.max(1.0) {
            return Err(VmsError::TimeGridMismatch {
                t_final: self.t_final,
                k: self.k,
            });
        }
        Ok(n as usize)
    }
}

/// Backward Euler stepper with the system matrix factored once.
#[derive(Debug, Clone)]
pub struct EvolutiveSolver {
    mesh: Mesh1D,
    k: f64,
    source: ElementTraces,
    /// Local map from the traces of `U^n + k f` to the right-hand side, `[test][trace]`.
    rhs_local: LocalMatrix,
    lu: TridiagonalLu,
    tau: Option<f64>,
}

impl EvolutiveSolver {
    pub fn new(problem: &EvolutiveProblem, mesh: &Mesh1D, mode: SolverMode) -> Result<Self> {
        problem.validate()?;
        let EvolutiveProblem { c, mu, k, .. } = *problem;
        let h = mesh.h();
        let g = assemble_galerkin(mesh);
        let ml = local_mass(h);
        let (matrix, rhs_local, tau) = match mode {
            SolverMode::Galerkin | SolverMode::SpectralVms { .. } => {
                let mut a = g.mass.clone();
                a.add_scaled(k * c, &g.convection);
                a.add_scaled(k * mu, &g.stiffness);
                let mut rhs_local = ml;
                if let SolverMode::SpectralVms { modes } = mode {
                    let scaling = OperatorScaling::evolutive(k, c, mu)?;
                    let basis = ElementSpectralBasis::new(mesh, 0, scaling, modes)?;
                    let blocks = LocalBlocks::from_basis(&basis);
                    a.add_scaled(1.0, &assemble_uniform(mesh, &blocks.system_matrix(&scaling)));
                    let r = blocks.rhs_matrix(&scaling);
                    for i in 0..2 {
                        for j in 0..2 {
                            rhs_local[i][j] += r[i][j];
                        }
                    }
                }
                (a, rhs_local, None)
            }
            SolverMode::TauVms(choice) => {
                let tau = match choice {
                    TauChoice::Value(t) => {
                        ensure_finite("tau", t)?;
                        t
                    }
                    TauChoice::Exact => tau_exact(k, c, mu, h)?,
                    TauChoice::Truncated(m) => {
                        let scaling = OperatorScaling::evolutive(k, c, mu)?;
                        tau_truncated(&ElementSpectralBasis::new(mesh, 0, scaling, m)?)
                    }
                };
                (tau_matrix(mesh, c, mu, k, tau), tau_rhs_local(h, c, k, tau), Some(tau))
            }
        };
        Ok(Self {
            mesh: mesh.clone(),
            k,
            source: problem.source.traces(mesh),
            rhs_local,
            lu: matrix.factor()?,
            tau,
        })
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    /// Stabilization coefficient in tau-form mode.
    pub fn tau(&self) -> Option<f64> {
        self.tau
    }

    /// Advances one step from the element traces of `U^n`; returns nodal values of `U^{n+1}`.
    pub fn step(&self, traces: &[[f64; 2]]) -> Result<Vec<f64>> {
        if traces.len() != self.mesh.n_elements() {
            return Err(VmsError::GridMismatch(format!(
                "{} traces for {} elements",
                traces.len(),
                self.mesh.n_elements()
            )));
        }
        let q = &self.rhs_local;
        let local: Vec<[f64; 2]> = traces
            .iter()
            .zip(&self.source)
            .map(|(u, f)| {
                let w = [u[0] + self.k * f[0], u[1] + self.k * f[1]];
                [
                    q[0][0] * w[0] + q[0][1] * w[1],
                    q[1][0] * w[0] + q[1][1] * w[1],
                ]
            })
            .collect();
        let rhs = assemble_vector(&self.mesh, &local);
        let u = self.lu.solve(&rhs)?;
        if u.iter().any(|v| !v.is_finite()) {
            return Err(VmsError::InvalidParameter {
                name: "solution",
                reason: "non-finite values produced".into(),
            });
        }
        Ok(self.mesh.with_boundary(&u, 0.0, 0.0))
    }
}

/// `(1 - tau)(M + k c C) + k mu D + tau k c C^T + tau k^2 c^2 D`.
fn tau_matrix(mesh: &Mesh1D, c: f64, mu: f64, k: f64, tau: f64) -> TridiagonalMatrix {
    let g = assemble_galerkin(mesh);
    let mut a = g.mass.scaled(1.0 - tau);
    a.add_scaled((1.0 - tau) * k * c, &g.convection);
    a.add_scaled(k * mu + tau * k * k * c * c, &g.stiffness);
    a.add_scaled(tau * k * c, &g.convection.transpose());
    a
}

/// Local right-hand side map `(1 - tau) M_K + tau k c G_K` with `G_K w = (w, phi_a')`.
fn tau_rhs_local(h: f64, c: f64, k: f64, tau: f64) -> LocalMatrix {
    let ml = local_mass(h);
    let g = [[-0.5, -0.5], [0.5, 0.5]];
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (1.0 - tau) * ml[i][j] + tau * k * c * g[i][j];
        }
    }
    out
}

/// One step from nodal values `state`.
pub fn step_evolutive(
    state: &[f64],
    problem: &EvolutiveProblem,
    mesh: &Mesh1D,
    mode: SolverMode,
) -> Result<Vec<f64>> {
    if state.len() != mesh.n_nodes() {
        return Err(VmsError::GridMismatch(format!(
            "state has {} values, mesh has {} nodes",
            state.len(),
            mesh.n_nodes()
        )));
    }
    EvolutiveSolver::new(problem, mesh, mode)?.step(&mesh.traces(state))
}

/// One tau-form step from nodal values `state`.
pub fn step_evolutive_tau(
    state: &[f64],
    problem: &EvolutiveProblem,
    mesh: &Mesh1D,
    tau: TauChoice,
) -> Result<Vec<f64>> {
    step_evolutive(state, problem, mesh, SolverMode::TauVms(tau))
}

/// Nodal fields at `t = 0, k, 2k, ..., N k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTrajectory {
    pub mesh: Mesh1D,
    pub mode: SolverMode,
    pub k: f64,
    pub times: Vec<f64>,
    pub fields: Vec<Vec<f64>>,
}

impl SolutionTrajectory {
    pub fn n_steps(&self) -> usize {
        self.fields.len() - 1
    }

    pub fn last(&self) -> &[f64] {
        self.fields.last().expect("trajectory holds the initial field")
    }
}

pub fn solve_evolutive(
    problem: &EvolutiveProblem,
    mesh: &Mesh1D,
    mode: SolverMode,
) -> Result<SolutionTrajectory> {
    let n = problem.n_steps()?;
    solve_evolutive_steps(problem, mesh, mode, n)
}

/// Like [`solve_evolutive`] but stops after `steps` steps.
pub fn solve_evolutive_steps(
    problem: &EvolutiveProblem,
    mesh: &Mesh1D,
    mode: SolverMode,
    steps: usize,
) -> Result<SolutionTrajectory> {
    let solver = EvolutiveSolver::new(problem, mesh, mode)
        .map_err(|e| VmsError::StepFailed { step: 1, source: Box::new(e) })?;
    let (c, mu) = (problem.c, problem.mu);
    let u0 = problem.initial.nodal(mesh, c, mu)?;
    let mut traces = problem.initial.element_traces(mesh, c, mu)?;
    let mut fields = Vec::with_capacity(steps + 1);
    let mut times = Vec::with_capacity(steps + 1);
    fields.push(u0);
    times.push(0.0);
    for step in 1..=steps {
        let u = solver
            .step(&traces)
            .map_err(|e| VmsError::StepFailed { step, source: Box::new(e) })?;
        traces = mesh.traces(&u);
        fields.push(u);
        times.push(step as f64 * problem.k);
    }
    Ok(SolutionTrajectory {
        mesh: mesh.clone(),
        mode,
        k: problem.k,
        times,
        fields,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::build_mesh;

    fn max_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn poisson_galerkin_is_nodally_exact() {
        let mesh = build_mesh(20).unwrap();
        let mut p = StationaryProblem::new(0.0, 0.0, 1.0);
        p.source = AffineSource::new(0.0, 1.0);
        p.u_right = 0.0;
        let u = solve_stationary(&p, &mesh, SolverMode::Galerkin).unwrap();
        for (v, &x) in u.iter().zip(mesh.nodes()) {
            assert!((v - x * (1.0 - x) / 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn default_homogenized_source() {
        let p = StationaryProblem::new(3.0, 2.0, 1.0);
        let f = p.homogenized_source();
        assert_eq!(f, AffineSource::new(-3.0, -2.0));
    }

    #[test]
    fn stationary_boundary_values_exact() {
        let mesh = build_mesh(10).unwrap();
        let u = solve_stationary(&StationaryProblem::new(1.0, 5.0, 0.1), &mesh, SolverMode::SpectralVms { modes: 3 })
            .unwrap();
        assert_eq!(u[0], 0.0);
        assert_eq!(u[10], 1.0);
    }

    #[test]
    fn empty_mode_set_equals_galerkin() {
        let mesh = build_mesh(40).unwrap();
        let p = StationaryProblem::new(1.0, 400.0, 1.0);
        let g = solve_stationary(&p, &mesh, SolverMode::Galerkin).unwrap();
        let s = solve_stationary(&p, &mesh, SolverMode::SpectralVms { modes: 0 }).unwrap();
        assert!(max_diff(&g, &s) <= 1e-12);
    }

    #[test]
    fn stationary_rejects_tau_mode_and_bad_mu() {
        let mesh = build_mesh(4).unwrap();
        let p = StationaryProblem::new(1.0, 1.0, 1.0);
        assert!(solve_stationary(&p, &mesh, SolverMode::TauVms(TauChoice::Exact)).is_err());
        let bad = StationaryProblem::new(1.0, 1.0, 0.0);
        assert!(matches!(
            solve_stationary(&bad, &mesh, SolverMode::Galerkin),
            Err(VmsError::InvalidParameter { name: "mu", .. })
        ));
    }

    #[test]
    fn box_traces() {
        let mesh = build_mesh(50).unwrap();
        let tr = InitialCondition::default().element_traces(&mesh, 0.0, 1.0).unwrap();
        // Elements 10..35 lie inside [0.2, 0.7].
        assert_eq!(tr[12], [1.0, 1.0]);
        assert_eq!(tr[3], [0.0, 0.0]);
        assert_eq!(tr[40], [0.0, 0.0]);
        let mesh = build_mesh(8).unwrap();
        // Element [0.125, 0.25] is covered on [0.2, 0.25]; the projection preserves the mean.
        let tr = InitialCondition::default().element_traces(&mesh, 0.0, 1.0).unwrap();
        let mean = 0.5 * (tr[1][0] + tr[1][1]);
        assert!((mean - 0.4).abs() < 1e-12);
        assert!(tr[1][1] > tr[1][0]);
    }

    #[test]
    fn box_nodal_inclusive() {
        let mesh = build_mesh(20).unwrap();
        let u = InitialCondition::default().nodal(&mesh, 0.0, 1.0).unwrap();
        assert_eq!(u[4], 1.0);
        assert_eq!(u[14], 1.0);
        assert_eq!(u[3], 0.0);
        assert_eq!(u[15], 0.0);
    }

    #[test]
    fn zero_data_stays_zero() {
        let mesh = build_mesh(10).unwrap();
        let mut p = EvolutiveProblem::new(5.0, 1.0, 0.01, 0.05);
        p.initial = InitialCondition::Nodal(vec![0.0; 11]);
        for mode in [SolverMode::Galerkin, SolverMode::SpectralVms { modes: 4 }, SolverMode::TauVms(TauChoice::Exact)] {
            let t = solve_evolutive(&p, &mesh, mode).unwrap();
            assert_eq!(t.n_steps(), 5);
            assert!(t.fields.iter().all(|f| f.iter().all(|&v| v == 0.0)));
        }
    }

    #[test]
    fn one_step_trajectory_equals_single_step() {
        let mesh = build_mesh(16).unwrap();
        let mut p = EvolutiveProblem::new(2.0, 1.0, 0.01, 0.01);
        p.initial = InitialCondition::Sine;
        let mode = SolverMode::SpectralVms { modes: 3 };
        let t = solve_evolutive(&p, &mesh, mode).unwrap();
        let u0 = p.initial.nodal(&mesh, 2.0, 1.0).unwrap();
        let s = step_evolutive(&u0, &p, &mesh, mode).unwrap();
        assert_eq!(t.fields[1], s);
    }

    #[test]
    fn zero_tau_equals_galerkin() {
        let mesh = build_mesh(50).unwrap();
        let mut p = EvolutiveProblem::new(1000.0, 1.0, 1e-3, 5e-3);
        p.source = AffineSource::new(0.5, 1.0);
        let g = solve_evolutive(&p, &mesh, SolverMode::Galerkin).unwrap();
        let t = solve_evolutive(&p, &mesh, SolverMode::TauVms(TauChoice::Value(0.0))).unwrap();
        for (a, b) in g.fields.iter().zip(&t.fields) {
            assert!(max_diff(a, b) <= 1e-12);
        }
    }

    #[test]
    fn time_grid_mismatch_rejected() {
        let p = EvolutiveProblem::new(1.0, 1.0, 0.3, 1.0);
        assert!(matches!(p.n_steps(), Err(VmsError::TimeGridMismatch { .. })));
        assert_eq!(EvolutiveProblem::new(1.0, 1.0, 0.1, 1.0).n_steps().unwrap(), 10);
    }

    #[test]
    fn galerkin_symmetric_problem_is_l2_stable() {
        let mesh = build_mesh(30).unwrap();
        let p = EvolutiveProblem::new(0.0, 0.05, 1e-2, 0.5);
        let t = solve_evolutive(&p, &mesh, SolverMode::Galerkin).unwrap();
        let h = mesh.h();
        let norm = |u: &[f64]| {
            u.windows(2)
                .map(|w| h * (w[0] * w[0] + w[0] * w[1] + w[1] * w[1]) / 3.0)
                .sum::<f64>()
        };
        for w in t.fields[1..].windows(2) {
            assert!(norm(&w[1]) <= norm(&w[0]) + 1e-15);
        }
    }

    #[test]
    fn deterministic_runs() {
        let mesh = build_mesh(50).unwrap();
        let p = EvolutiveProblem::new(1000.0, 1.0, 1e-3, 5e-3);
        let a = solve_evolutive(&p, &mesh, SolverMode::SpectralVms { modes: 15 }).unwrap();
        let b = solve_evolutive(&p, &mesh, SolverMode::SpectralVms { modes: 15 }).unwrap();
        for (x, y) in a.fields.iter().zip(&b.fields) {
            assert!(x.iter().zip(y).all(|(p, q)| p.to_bits() == q.to_bits()));
        }
    }
}
