//! Experiment runner behind the `spectral-vms` binary.
//!
//! Every preset is stored as configuration text and goes through the same
//! parser as user configuration files, so a file holding the preset text
//! produces byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::analysis::{
    convergence_slope, dense_max_error, error_norms, exact_advected_mode, exact_stationary,
    field_error, total_variation, overshoot_metric, Comparison, ConvergenceStudy, Reference,
    TrajectoryReference,
};
use crate::config::{
    parse_config, ConfigError, Curve, InitialKind, ProblemKind, ReferencePolicy, RunConfig, Study,
};
use crate::csv::{Cell, Table};
use crate::error::{Result, VmsError};
use crate::fem::{build_mesh, Mesh1D};
use crate::green::tau_pair;
use crate::solvers::{
    solve_evolutive_steps, solve_stationary, EvolutiveProblem, InitialCondition,
    SolutionTrajectory, SolverMode, StationaryProblem, TauChoice,
};

/// Points per element for the sampled maximum error.
const DENSE_SAMPLES: usize = 20;

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub config: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig-rcd1a",
        description: "stationary, gamma=1, c=400, mu=1, h=1/40: exact, Galerkin and M=2,3,14,15",
        config: "\
name = fig-rcd1a
kind = stationary-adr
gamma = 1
c = 400
mu = 1
n_elements = 40
curves = galerkin, spectral:2, spectral:3, spectral:14, spectral:15
reference = exact
",
    },
    Preset {
        name: "fig-rcd1b",
        description: "stationary, gamma=1000, c=1, mu=1, h=1/40: exact, Galerkin and M=2,3,14,15",
        config: "\
name = fig-rcd1b
kind = stationary-adr
gamma = 1000
c = 1
mu = 1
n_elements = 40
curves = galerkin, spectral:2, spectral:3, spectral:14, spectral:15
reference = exact
",
    },
    Preset {
        name: "fig-ev1",
        description: "evolutive box data, c=1000, mu=1, h=1/50, k=1e-3, five steps: Galerkin, M=14, M=15",
        config: "\
name = fig-ev1
kind = evolutive-ad
c = 1000
mu = 1
n_elements = 50
k = 1e-3
steps = 5
initial = box
curves = galerkin, spectral:14, spectral:15
",
    },
    Preset {
        name: "fig-ev1step",
        description: "evolutive box data, c=400, mu=1, h=1/50, k=1e-5, one step against Galerkin on h=1/500",
        config: "\
name = fig-ev1step
kind = evolutive-ad
c = 400
mu = 1
n_elements = 50
k = 1e-5
steps = 1
initial = box
curves = galerkin, spectral:5
reference = fine-galerkin
reference_factor = 10
",
    },
    Preset {
        name: "fig-hauke",
        description: "evolutive box data, c=20, mu=1, h=1/100, CFL = CFL_bound/2, five steps: Galerkin, M=11",
        config: "\
name = fig-hauke
kind = evolutive-ad
c = 20
mu = 1
n_elements = 100
cfl_ratio = 0.5
steps = 5
initial = box
curves = galerkin, spectral:11
",
    },
    Preset {
        name: "conv-h-stationary",
        description: "stationary h-convergence, gamma=c=mu=1, M=10, h=1/10..1/160",
        config: "\
name = conv-h-stationary
kind = stationary-adr
study = h-sweep
gamma = 1
c = 1
mu = 1
n_elements_list = 10, 20, 40, 80, 160
curves = spectral:10
reference = exact
reference_factor = 10
",
    },
    Preset {
        name: "conv-m-stationary",
        description: "stationary M-convergence, h=1/40, odd M=3..41, advection- and reaction-dominated cases",
        config: "\
name = conv-m-stationary
kind = stationary-adr
study = m-sweep
mu = 1
n_elements = 40
modes = 3:41:2
reference = exact

[advection-dominated]
gamma = 1
c = 400

[reaction-dominated]
gamma = 1000
c = 1
",
    },
    Preset {
        name: "conv-h-evolutive",
        description: "evolutive h-convergence, c=mu=1, M=10, k=1e-2, T=1, against Galerkin on h/10",
        config: "\
name = conv-h-evolutive
kind = evolutive-ad
study = h-sweep
c = 1
mu = 1
n_elements_list = 10, 20, 40, 80, 160
k = 1e-2
t_final = 1
initial = sine
curves = spectral:10
reference = fine-galerkin
reference_factor = 10
",
    },
    Preset {
        name: "conv-k-evolutive",
        description: "evolutive k-convergence, c=mu=1, M=10, h=1/100, T=0.5, k halved five times",
        config: "\
name = conv-k-evolutive
kind = evolutive-ad
study = k-sweep
c = 1
mu = 1
n_elements = 100
k_list = 0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125
t_final = 0.5
initial = advected-mode
curves = spectral:10
reference = exact
",
    },
    Preset {
        name: "conv-m-evolutive",
        description: "evolutive M-convergence, c=1000, mu=1, h=1/100, k=0.05 (k/h=5), odd M=3..41",
        config: "\
name = conv-m-evolutive
kind = evolutive-ad
study = m-sweep
c = 1000
mu = 1
n_elements = 100
k = 0.05
t_final = 1
initial = sine
modes = 3:41:2
reference = converged-spectral
reference_modes = 20000
",
    },
    Preset {
        name: "tau-table",
        description: "exact tau against its small-step expansion and its spectral truncations",
        config: "\
name = tau-table
kind = tau-table
c = 1
mu = 1
k_list = 1e-2, 1e-3, 1e-4, 1e-5
n_elements = 50
k = 1e-3
peclet_list = 0.1, 1, 10
modes = 3:41:2
",
    },
];

pub fn find_preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown preset `{0}` (see `list-presets`)")]
    UnknownPreset(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numeric failure in `{case}`: {source}")]
    Numeric {
        case: String,
        #[source]
        source: VmsError,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    /// Process exit code: 3 for numeric failures, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Numeric { .. } => 3,
            _ => 2,
        }
    }
}

/// Tables produced by one case.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub config: RunConfig,
    pub tables: Vec<Table>,
}

impl CaseResult {
    pub fn table(&self, file_name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.file_name == file_name)
    }

    /// Least-squares slope recorded in `slopes.csv`.
    pub fn slope(&self, norm: &str) -> Option<f64> {
        let t = self.table("slopes.csv")?;
        let i = t.column_index("slope")?;
        t.filter("norm", norm).next().and_then(|r| r[i].as_f64())
    }

    /// Rendered CSV files as `(file name, content)`.
    pub fn rendered(&self) -> Vec<(String, String)> {
        let provenance = self.config.provenance();
        self.tables
            .iter()
            .map(|t| (t.file_name.clone(), t.render(&provenance)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub cases: Vec<CaseResult>,
}

impl RunOutput {
    pub fn case(&self, name: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.config.case == name)
    }

    /// Writes every table below `dir`; multi-case runs get one subdirectory per case.
    pub fn write_to(&self, dir: &Path) -> std::result::Result<Vec<PathBuf>, HarnessError> {
        let mut written = Vec::new();
        for case in &self.cases {
            let target = if case.config.case.is_empty() {
                dir.to_path_buf()
            } else {
                dir.join(&case.config.case)
            };
            fs::create_dir_all(&target).map_err(|source| HarnessError::Io {
                path: target.clone(),
                source,
            })?;
            for (name, content) in case.rendered() {
                let path = target.join(name);
                fs::write(&path, content).map_err(|source| HarnessError::Io {
                    path: path.clone(),
                    source,
                })?;
                written.push(path);
            }
        }
        Ok(written)
    }
}

pub fn run_preset(name: &str) -> std::result::Result<RunOutput, HarnessError> {
    let preset = find_preset(name).ok_or_else(|| HarnessError::UnknownPreset(name.to_string()))?;
    run_config_text(preset.config)
}

pub fn run_config_text(text: &str) -> std::result::Result<RunOutput, HarnessError> {
    let configs = parse_config(text)?;
    let cases = configs
        .into_iter()
        .map(|cfg| {
            run_case(&cfg)
                .map(|tables| CaseResult { config: cfg.clone(), tables })
                .map_err(|source| HarnessError::Numeric {
                    case: if cfg.case.is_empty() {
                        cfg.name.clone()
                    } else {
                        format!("{}/{}", cfg.name, cfg.case)
                    },
                    source,
                })
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(RunOutput { cases })
}

/// Runs one validated case.
pub fn run_case(cfg: &RunConfig) -> Result<Vec<Table>> {
    match (cfg.kind, cfg.study) {
        (ProblemKind::TauTable, _) => tau_table(cfg),
        (ProblemKind::StationaryAdr, Study::Solution) => stationary_solution(cfg),
        (ProblemKind::StationaryAdr, Study::HSweep) => stationary_h_sweep(cfg),
        (ProblemKind::StationaryAdr, Study::MSweep) => stationary_m_sweep(cfg),
        (ProblemKind::EvolutiveAd, Study::Solution) => evolutive_solution(cfg),
        (ProblemKind::EvolutiveAd, Study::HSweep) => evolutive_h_sweep(cfg),
        (ProblemKind::EvolutiveAd, Study::KSweep) => evolutive_k_sweep(cfg),
        (ProblemKind::EvolutiveAd, Study::MSweep) => evolutive_m_sweep(cfg),
        (ProblemKind::StationaryAdr, Study::KSweep) => Err(VmsError::InvalidParameter {
            name: "study",
            reason: "a k-sweep needs the evolutive problem".into(),
        }),
    }
}

pub fn solver_mode(curve: Curve) -> SolverMode {
    match curve {
        Curve::Galerkin => SolverMode::Galerkin,
        Curve::Spectral(m) => SolverMode::SpectralVms { modes: m },
        Curve::TauExact => SolverMode::TauVms(TauChoice::Exact),
        Curve::TauTruncated(m) => SolverMode::TauVms(TauChoice::Truncated(m)),
    }
}

pub fn stationary_problem(cfg: &RunConfig) -> StationaryProblem {
    StationaryProblem {
        gamma: cfg.gamma,
        c: cfg.c,
        mu: cfg.mu,
        source: cfg.source,
        u_left: cfg.u_left,
        u_right: cfg.u_right,
    }
}

pub fn evolutive_problem(cfg: &RunConfig, k: f64) -> EvolutiveProblem {
    EvolutiveProblem {
        c: cfg.c,
        mu: cfg.mu,
        k,
        t_final: cfg.t_final,
        source: cfg.source,
        initial: match cfg.initial {
            InitialKind::Box { lo, hi } => InitialCondition::Box { lo, hi },
            InitialKind::Sine => InitialCondition::Sine,
            InitialKind::AdvectedMode => InitialCondition::AdvectedMode,
        },
    }
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn slope_table(study: &ConvergenceStudy) -> Result<Table> {
    let mut t = Table::new(
        "slopes.csv",
        cols(&["norm", "parameter", "slope", "intercept", "pairwise_min", "pairwise_max"]),
    );
    for (name, fit) in study.slopes()? {
        let lo = fit.pairwise.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = fit.pairwise.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        t.push(vec![
            name.into(),
            study.parameter.as_str().into(),
            fit.slope.into(),
            fit.intercept.into(),
            lo.into(),
            hi.into(),
        ]);
    }
    Ok(t)
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

fn stationary_solution(cfg: &RunConfig) -> Result<Vec<Table>> {
    let mesh = build_mesh(cfg.n_elements)?;
    let problem = stationary_problem(cfg);
    let exact_fn = |x: f64| exact_stationary(x, cfg.gamma, cfg.c, cfg.mu);
    let has_exact = cfg.reference == ReferencePolicy::Exact;
    let fields = cfg
        .curves
        .iter()
        .map(|&curve| Ok((curve.label(), solve_stationary(&problem, &mesh, solver_mode(curve))?)))
        .collect::<Result<Vec<_>>>()?;

    let mut names = vec!["x".to_string()];
    if has_exact {
        names.push("exact".into());
    }
    names.extend(fields.iter().map(|(l, _)| l.clone()));
    let mut solution = Table::new("solution.csv", names);
    for (i, &x) in mesh.nodes().iter().enumerate() {
        let mut row: Vec<Cell> = vec![x.into()];
        if has_exact {
            row.push(exact_fn(x).into());
        }
        row.extend(fields.iter().map(|(_, u)| Cell::from(u[i])));
        solution.push(row);
    }

    let mut names = cols(&["curve", "min", "max"]);
    if has_exact {
        names.extend(cols(&["nodal_max", "linf_dense", "l2_fine", "h1_fine"]));
    }
    let mut metrics = Table::new("metrics.csv", names);
    for (label, u) in &fields {
        let (lo, hi) = min_max(u);
        let mut row: Vec<Cell> = vec![label.as_str().into(), lo.into(), hi.into()];
        if has_exact {
            let e = field_error(
                u,
                &Reference::Function(&exact_fn),
                Comparison::Fine { factor: cfg.reference_factor },
            )?;
            row.extend([
                e.nodal_max.into(),
                dense_max_error(u, exact_fn, DENSE_SAMPLES).into(),
                e.l2.into(),
                e.h1.into(),
            ]);
        }
        metrics.push(row);
    }
    Ok(vec![solution, metrics])
}

fn stationary_h_sweep(cfg: &RunConfig) -> Result<Vec<Table>> {
    let problem = stationary_problem(cfg);
    let mode = solver_mode(cfg.curves[0]);
    let exact_fn = |x: f64| exact_stationary(x, cfg.gamma, cfg.c, cfg.mu);
    let mut table = Table::new(
        "convergence.csv",
        cols(&["n_elements", "h", "l2_fine", "h1_fine", "l2_nodal", "h1_nodal", "nodal_max"]),
    );
    let mut errs: [Vec<f64>; 4] = Default::default();
    let mut hs = Vec::new();
    for &n in &cfg.n_elements_list {
        let mesh = build_mesh(n)?;
        let u = solve_stationary(&problem, &mesh, mode)?;
        let reference = Reference::Function(&exact_fn);
        let fine = field_error(&u, &reference, Comparison::Fine { factor: cfg.reference_factor })?;
        let nodal = field_error(&u, &reference, Comparison::Nodal)?;
        let vals = [fine.l2, fine.h1, nodal.l2, nodal.h1];
        for (acc, v) in errs.iter_mut().zip(vals) {
            acc.push(v);
        }
        hs.push(mesh.h());
        table.push(vec![
            n.into(),
            mesh.h().into(),
            fine.l2.into(),
            fine.h1.into(),
            nodal.l2.into(),
            nodal.h1.into(),
            nodal.nodal_max.into(),
        ]);
    }
    let mut study = ConvergenceStudy::new("h", hs)?;
    for (name, e) in ["l2_fine", "h1_fine", "l2_nodal", "h1_nodal"].iter().zip(errs) {
        study.add_norm(*name, e)?;
    }
    Ok(vec![table, slope_table(&study)?])
}

fn stationary_m_sweep(cfg: &RunConfig) -> Result<Vec<Table>> {
    let mesh = build_mesh(cfg.n_elements)?;
    let problem = stationary_problem(cfg);
    let exact_fn = |x: f64| exact_stationary(x, cfg.gamma, cfg.c, cfg.mu);
    let mut table = Table::new("convergence.csv", cols(&["m", "nodal_max", "linf_dense"]));
    let (mut nodal, mut dense) = (Vec::new(), Vec::new());
    for &m in &cfg.modes {
        let u = solve_stationary(&problem, &mesh, SolverMode::SpectralVms { modes: m })?;
        let e = field_error(&u, &Reference::Function(&exact_fn), Comparison::Nodal)?;
        let d = dense_max_error(&u, exact_fn, DENSE_SAMPLES);
        nodal.push(e.nodal_max);
        dense.push(d);
        table.push(vec![m.into(), e.nodal_max.into(), d.into()]);
    }
    let mut study = ConvergenceStudy::new("m", cfg.modes.iter().map(|&m| m as f64).collect())?;
    study.add_norm("nodal_max", nodal)?;
    study.add_norm("linf_dense", dense)?;
    Ok(vec![table, slope_table(&study)?])
}

/// Reference trajectory for evolutive runs on `mesh`, if the policy needs one.
fn reference_trajectory(
    cfg: &RunConfig,
    problem: &EvolutiveProblem,
    mesh: &Mesh1D,
    steps: usize,
) -> Result<Option<SolutionTrajectory>> {
    match cfg.reference {
        ReferencePolicy::FineGalerkin => {
            let fine = build_mesh(mesh.n_elements() * cfg.reference_factor)?;
            solve_evolutive_steps(problem, &fine, SolverMode::Galerkin, steps).map(Some)
        }
        ReferencePolicy::ConvergedSpectral => solve_evolutive_steps(
            problem,
            mesh,
            SolverMode::SpectralVms { modes: cfg.reference_modes },
            steps,
        )
        .map(Some),
        ReferencePolicy::Exact | ReferencePolicy::None => Ok(None),
    }
}

fn evolutive_solution(cfg: &RunConfig) -> Result<Vec<Table>> {
    let mesh = build_mesh(cfg.n_elements)?;
    let problem = evolutive_problem(cfg, cfg.k);
    let trajectories = cfg
        .curves
        .iter()
        .map(|&curve| {
            Ok((curve.label(), solve_evolutive_steps(&problem, &mesh, solver_mode(curve), cfg.steps)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let ref_traj = reference_trajectory(cfg, &problem, &mesh, cfg.steps)?;
    let n = mesh.n_elements();
    let reference_at = |step: usize, t: f64| -> Option<Vec<f64>> {
        match (&ref_traj, cfg.reference) {
            (Some(r), _) => {
                let f = &r.fields[step];
                let stride = (f.len() - 1) / n;
                Some((0..=n).map(|i| f[i * stride]).collect())
            }
            (None, ReferencePolicy::Exact) => {
                Some(mesh.sample(|x| exact_advected_mode(x, t, cfg.c, cfg.mu)))
            }
            _ => None,
        }
    };
    let has_ref = cfg.reference != ReferencePolicy::None;
    let times = &trajectories[0].1.times;

    let mut names = cols(&["step", "t", "x"]);
    if has_ref {
        names.push("reference".into());
    }
    names.extend(trajectories.iter().map(|(l, _)| l.clone()));
    let mut solution = Table::new("solution.csv", names);
    for (step, &t) in times.iter().enumerate() {
        let r = reference_at(step, t);
        for (i, &x) in mesh.nodes().iter().enumerate() {
            let mut row: Vec<Cell> = vec![step.into(), t.into(), x.into()];
            if let Some(r) = &r {
                row.push(r[i].into());
            }
            row.extend(trajectories.iter().map(|(_, tr)| Cell::from(tr.fields[step][i])));
            solution.push(row);
        }
    }

    let u0 = &trajectories[0].1.fields[0];
    let bounds = min_max(u0);
    let tv0 = total_variation(u0);
    let mut names = cols(&["curve", "step", "t", "min", "max", "total_variation", "overshoot"]);
    if has_ref {
        names.push("nodal_error".into());
    }
    let mut metrics = Table::new("metrics.csv", names.clone());
    let mut summary_names = cols(&["curve", "max_overshoot"]);
    if has_ref {
        summary_names.push("max_nodal_error".into());
    }
    let mut summary = Table::new("summary.csv", summary_names);
    for (label, tr) in &trajectories {
        let (mut worst_over, mut worst_err) = (0.0f64, 0.0f64);
        for step in 1..tr.fields.len() {
            let u = &tr.fields[step];
            let t = tr.times[step];
            let (lo, hi) = min_max(u);
            let over = overshoot_metric(u, bounds, tv0);
            worst_over = worst_over.max(over);
            let mut row: Vec<Cell> = vec![
                label.as_str().into(),
                step.into(),
                t.into(),
                lo.into(),
                hi.into(),
                total_variation(u).into(),
                over.into(),
            ];
            if let Some(r) = reference_at(step, t) {
                let e = u.iter().zip(&r).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                worst_err = worst_err.max(e);
                row.push(e.into());
            }
            metrics.push(row);
        }
        let mut row: Vec<Cell> = vec![label.as_str().into(), worst_over.into()];
        if has_ref {
            row.push(worst_err.into());
        }
        summary.push(row);
    }
    Ok(vec![solution, metrics, summary])
}

fn evolutive_h_sweep(cfg: &RunConfig) -> Result<Vec<Table>> {
    let problem = evolutive_problem(cfg, cfg.k);
    let mode = solver_mode(cfg.curves[0]);
    let exact_fn = |t: f64, x: f64| exact_advected_mode(x, t, cfg.c, cfg.mu);
    let norms = ["linf_l2_fine", "l2_h1_fine", "linf_l2_nodal", "l2_h1_nodal"];
    let mut names = cols(&["n_elements", "h"]);
    names.extend(cols(&norms));
    let mut table = Table::new("convergence.csv", names);
    let mut errs: [Vec<f64>; 4] = Default::default();
    let mut hs = Vec::new();
    for &n in &cfg.n_elements_list {
        let mesh = build_mesh(n)?;
        let traj = solve_evolutive_steps(&problem, &mesh, mode, cfg.steps)?;
        let ref_traj = reference_trajectory(cfg, &problem, &mesh, cfg.steps)?;
        let reference = match &ref_traj {
            Some(r) => TrajectoryReference::Trajectory(r),
            None => TrajectoryReference::Function(&exact_fn),
        };
        let fine = error_norms(&traj, reference, Comparison::Fine { factor: cfg.reference_factor })?;
        let nodal = error_norms(&traj, reference, Comparison::Nodal)?;
        let vals = [fine.linf_l2, fine.l2_h1, nodal.linf_l2, nodal.l2_h1];
        let mut row: Vec<Cell> = vec![n.into(), mesh.h().into()];
        for (acc, v) in errs.iter_mut().zip(vals) {
            acc.push(v);
            row.push(v.into());
        }
        hs.push(mesh.h());
        table.push(row);
    }
    let mut study = ConvergenceStudy::new("h", hs)?;
    for (name, e) in norms.iter().zip(errs) {
        study.add_norm(*name, e)?;
    }
    Ok(vec![table, slope_table(&study)?])
}

fn evolutive_k_sweep(cfg: &RunConfig) -> Result<Vec<Table>> {
    let mesh = build_mesh(cfg.n_elements)?;
    let mode = solver_mode(cfg.curves[0]);
    let exact_fn = |t: f64, x: f64| exact_advected_mode(x, t, cfg.c, cfg.mu);
    let mut table = Table::new("convergence.csv", cols(&["k", "steps", "linf_l2", "l2_h1", "nodal_max"]));
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for &k in &cfg.k_list {
        let problem = evolutive_problem(cfg, k);
        let steps = problem.n_steps()?;
        let traj = solve_evolutive_steps(&problem, &mesh, mode, steps)?;
        let e = error_norms(&traj, TrajectoryReference::Function(&exact_fn), Comparison::Nodal)?;
        a.push(e.linf_l2);
        b.push(e.l2_h1);
        table.push(vec![k.into(), steps.into(), e.linf_l2.into(), e.l2_h1.into(), e.nodal_max.into()]);
    }
    let mut study = ConvergenceStudy::new("k", cfg.k_list.clone())?;
    study.add_norm("linf_l2", a)?;
    study.add_norm("l2_h1", b)?;
    Ok(vec![table, slope_table(&study)?])
}

fn evolutive_m_sweep(cfg: &RunConfig) -> Result<Vec<Table>> {
    let mesh = build_mesh(cfg.n_elements)?;
    let problem = evolutive_problem(cfg, cfg.k);
    let exact_fn = |t: f64, x: f64| exact_advected_mode(x, t, cfg.c, cfg.mu);
    let ref_traj = reference_trajectory(cfg, &problem, &mesh, cfg.steps)?;
    let reference = match &ref_traj {
        Some(r) => TrajectoryReference::Trajectory(r),
        None => TrajectoryReference::Function(&exact_fn),
    };
    let mut table = Table::new("convergence.csv", cols(&["m", "linf_l2", "l2_h1", "nodal_max"]));
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for &m in &cfg.modes {
        let traj = solve_evolutive_steps(&problem, &mesh, SolverMode::SpectralVms { modes: m }, cfg.steps)?;
        let e = error_norms(&traj, reference, Comparison::Nodal)?;
        a.push(e.linf_l2);
        b.push(e.l2_h1);
        table.push(vec![m.into(), e.linf_l2.into(), e.l2_h1.into(), e.nodal_max.into()]);
    }
    let mut study = ConvergenceStudy::new("m", cfg.modes.iter().map(|&m| m as f64).collect())?;
    study.add_norm("linf_l2", a)?;
    study.add_norm("l2_h1", b)?;
    Ok(vec![table, slope_table(&study)?])
}

/// Small-step expansion `k/(12 mu) - k^2/(120 mu^2)` of the exact coefficient at `h = k`.
pub fn tau_asymptote(k: f64, mu: f64) -> f64 {
    k / (12.0 * mu) - k * k / (120.0 * mu * mu)
}

fn tau_table(cfg: &RunConfig) -> Result<Vec<Table>> {
    let mut asym = Table::new(
        "tau_asymptotics.csv",
        cols(&["k", "h", "tau_exact", "asymptote", "abs_diff"]),
    );
    let mut diffs = Vec::new();
    for &k in &cfg.k_list {
        let tau = crate::green::tau_exact(k, cfg.c, cfg.mu, k)?;
        let a = tau_asymptote(k, cfg.mu);
        diffs.push((tau - a).abs());
        asym.push(vec![k.into(), k.into(), tau.into(), a.into(), (tau - a).abs().into()]);
    }
    let mut slopes = Table::new(
        "slopes.csv",
        cols(&["norm", "parameter", "slope", "intercept", "pairwise_min", "pairwise_max"]),
    );
    let mut push_fit = |name: String, param: &str, x: &[f64], y: &[f64]| -> Result<()> {
        let fit = convergence_slope(x, y)?;
        let lo = fit.pairwise.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = fit.pairwise.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        slopes.push(vec![
            name.into(),
            param.into(),
            fit.slope.into(),
            fit.intercept.into(),
            lo.into(),
            hi.into(),
        ]);
        Ok(())
    };
    push_fit("asymptotic_error".into(), "k", &cfg.k_list, &diffs)?;

    let h = 1.0 / cfg.n_elements as f64;
    let mut trunc = Table::new(
        "tau_truncation.csv",
        cols(&["peclet", "c", "m", "tau_truncated", "tau_exact", "abs_diff"]),
    );
    let ms: Vec<f64> = cfg.modes.iter().map(|&m| m as f64).collect();
    for &pe in &cfg.peclet_list {
        let c = 2.0 * cfg.mu * pe / h;
        let mut errs = Vec::new();
        for &m in &cfg.modes {
            let p = tau_pair(cfg.k, c, cfg.mu, h, m)?;
            let d = (p.tau_exact - p.tau_truncated).abs();
            errs.push(d);
            trunc.push(vec![
                pe.into(),
                c.into(),
                m.into(),
                p.tau_truncated.into(),
                p.tau_exact.into(),
                d.into(),
            ]);
        }
        push_fit(format!("truncation_error:{pe}"), "m", &ms, &errs)?;
    }
    Ok(vec![asym, trunc, slopes])
}
