//! Exact solutions, discrete error norms, convergence rates and diagnostics.

use crate::error::{ensure_positive, Result, VmsError};
use crate::solvers::SolutionTrajectory;

/// Solution of `gamma u + c u' - mu u'' = 0`, `u(0) = 0`, `u(1) = 1`.
///
/// Evaluated as `exp((c/mu + rho)(x - 1)/2) (1 - e^{-rho x}) / (1 - e^{-rho})`
/// with `rho = sqrt(c^2 + 4 gamma mu) / mu`, which never overflows.
pub fn exact_stationary(x: f64, gamma: f64, c: f64, mu: f64) -> f64 {
    let rho = (c * c + 4.0 * gamma * mu).sqrt() / mu;
    let shape = if rho == 0.0 {
        x
    } else {
        (-rho * x).exp_m1() / (-rho).exp_m1()
    };
    (0.5 * (c / mu + rho) * (x - 1.0)).exp() * shape
}

/// Solution of `u_t + c u_x - mu u_xx = 0` with `u(x, 0) = exp(c x / (2 mu)) sin(pi x)`.
pub fn exact_advected_mode(x: f64, t: f64, c: f64, mu: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let decay = mu * pi * pi + c * c / (4.0 * mu);
    (c * x / (2.0 * mu) - decay * t).exp() * (pi * x).sin()
}

/// Exact `(L2 norm, H1 seminorm)` of the P1 field with nodal values `e` on a uniform mesh.
pub fn p1_norms(e: &[f64], h: f64) -> (f64, f64) {
    let mut l2 = 0.0;
    let mut h1 = 0.0;
    for w in e.windows(2) {
        let (a, b) = (w[0], w[1]);
        l2 += h * (a * a + a * b + b * b) / 3.0;
        h1 += (b - a) * (b - a) / h;
    }
    (l2.sqrt(), h1.sqrt())
}

/// Where the error is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Interpolate the approximation onto the mesh refined by `factor` and compare there.
    Fine { factor: usize },
    /// Compare at the approximation's own nodes.
    Nodal,
}

/// Reference values for a single time level.
#[derive(Clone, Copy)]
pub enum Reference<'a> {
    /// Nodal values on a uniform mesh whose element count is a multiple of the target's.
    Nodal(&'a [f64]),
    Function(&'a dyn Fn(f64) -> f64),
}

/// Reference values at the nodes of the uniform mesh with `m` elements.
fn sample_reference(reference: &Reference<'_>, m: usize) -> Result<Vec<f64>> {
    match reference {
        Reference::Nodal(v) => {
            let mv = v.len().saturating_sub(1);
            if mv == 0 || mv % m != 0 {
                return Err(VmsError::GridMismatch(format!(
                    "reference with {mv} elements cannot be sampled on {m} elements"
                )));
            }
            let stride = mv / m;
            Ok((0..=m).map(|i| v[i * stride]).collect())
        }
        Reference::Function(f) => Ok((0..=m).map(|i| f(i as f64 / m as f64)).collect()),
    }
}

/// Interpolates a P1 field with `n` elements onto the mesh with `n * factor` elements.
pub fn refine_p1(u: &[f64], factor: usize) -> Vec<f64> {
    let n = u.len() - 1;
    let mut out = Vec::with_capacity(n * factor + 1);
    for e in 0..n {
        for i in 0..factor {
            let s = i as f64 / factor as f64;
            out.push(u[e] * (1.0 - s) + u[e + 1] * s);
        }
    }
    out.push(u[n]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepError {
    pub t: f64,
    pub l2: f64,
    pub h1: f64,
    /// Max over the approximation's nodes.
    pub nodal_max: f64,
}

/// Errors of a single nodal field against a reference.
pub fn field_error(u: &[f64], reference: &Reference<'_>, comparison: Comparison) -> Result<StepError> {
    let n = u.len().saturating_sub(1);
    if n == 0 {
        return Err(VmsError::GridMismatch("empty field".into()));
    }
    let at_nodes = sample_reference(reference, n)?;
    let nodal_max = u
        .iter()
        .zip(&at_nodes)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let (diff, h) = match comparison {
        Comparison::Nodal => (
            u.iter().zip(&at_nodes).map(|(a, b)| a - b).collect::<Vec<_>>(),
            1.0 / n as f64,
        ),
        Comparison::Fine { factor } => {
            if factor == 0 {
                return Err(VmsError::GridMismatch("refinement factor must be positive".into()));
            }
            let fine_ref = sample_reference(reference, n * factor)?;
            let fine = refine_p1(u, factor);
            (
                fine.iter().zip(&fine_ref).map(|(a, b)| a - b).collect(),
                1.0 / (n * factor) as f64,
            )
        }
    };
    let (l2, h1) = p1_norms(&diff, h);
    Ok(StepError {
        t: 0.0,
        l2,
        h1,
        nodal_max,
    })
}

/// Max of `|u_h - f|` sampled at `per_element` points in every element.
pub fn dense_max_error(u: &[f64], f: impl Fn(f64) -> f64, per_element: usize) -> f64 {
    let n = u.len() - 1;
    let refined = refine_p1(u, per_element);
    let m = n * per_element;
    refined
        .iter()
        .enumerate()
        .fold(0.0f64, |acc, (i, v)| acc.max((v - f(i as f64 / m as f64)).abs()))
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ErrorReport {
    /// `max_n ||e^n||_{L2}` over steps `1..=N`.
    pub linf_l2: f64,
    /// `(sum_n k |e^n|_{H1}^2)^{1/2}`.
    pub l2_h1: f64,
    /// Max over steps and nodes of `|e|`.
    pub nodal_max: f64,
    pub per_step: Vec<StepError>,
}

impl ErrorReport {
    pub fn from_steps(per_step: Vec<StepError>, k: f64) -> Self {
        let linf_l2 = per_step.iter().fold(0.0f64, |m, s| m.max(s.l2));
        let l2_h1 = per_step.iter().map(|s| k * s.h1 * s.h1).sum::<f64>().sqrt();
        let nodal_max = per_step.iter().fold(0.0f64, |m, s| m.max(s.nodal_max));
        Self {
            linf_l2,
            l2_h1,
            nodal_max,
            per_step,
        }
    }
}

/// Reference for a whole trajectory.
#[derive(Clone, Copy)]
pub enum TrajectoryReference<'a> {
    /// Another trajectory on the same time grid, on the same or a refined mesh.
    Trajectory(&'a SolutionTrajectory),
    /// `u(t, x)`.
    Function(&'a dyn Fn(f64, f64) -> f64),
}

/// Discrete space-time errors over steps `1..=N` of `traj`.
pub fn error_norms(
    traj: &SolutionTrajectory,
    reference: TrajectoryReference<'_>,
    comparison: Comparison,
) -> Result<ErrorReport> {
    if let TrajectoryReference::Trajectory(r) = reference {
        if r.times.len() != traj.times.len()
            || r.times
                .iter()
                .zip(&traj.times)
                .any(|(a, b)| (a - b).abs() > 1e-12 * a.abs().max(1.0))
        {
            return Err(VmsError::GridMismatch(format!(
                "time grids differ: {} vs {} levels",
                traj.times.len(),
                r.times.len()
            )));
        }
    }
    let mut steps = Vec::with_capacity(traj.n_steps());
    for i in 1..traj.fields.len() {
        let t = traj.times[i];
        let mut e = match reference {
            TrajectoryReference::Trajectory(r) => {
                field_error(&traj.fields[i], &Reference::Nodal(&r.fields[i]), comparison)?
            }
            TrajectoryReference::Function(f) => {
                let g = |x: f64| f(t, x);
                field_error(&traj.fields[i], &Reference::Function(&g), comparison)?
            }
        };
        e.t = t;
        steps.push(e);
    }
    Ok(ErrorReport::from_steps(steps, traj.k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    /// Least-squares slope of `log(error)` against `log(parameter)`.
    pub slope: f64,
    pub intercept: f64,
    /// Slopes between consecutive samples.
    pub pairwise: Vec<f64>,
}

pub fn convergence_slope(params: &[f64], errors: &[f64]) -> Result<SlopeFit> {
    if params.len() != errors.len() {
        return Err(VmsError::DimensionMismatch(format!(
            "{} parameters, {} errors",
            params.len(),
            errors.len()
        )));
    }
    if params.len() < 3 {
        return Err(VmsError::TooFewSamples {
            needed: 3,
            got: params.len(),
        });
    }
    for (index, &value) in errors.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(VmsError::NonPositiveError { index, value });
        }
    }
    for &p in params {
        ensure_positive("parameter", p)?;
    }
    let xs: Vec<f64> = params.iter().map(|p| p.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let pairwise = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
        .collect();
    Ok(SlopeFit {
        slope,
        intercept: my - slope * mx,
        pairwise,
    })
}

/// A sweep of one discretization parameter with errors in several norms.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub parameter: String,
    pub values: Vec<f64>,
    pub errors: Vec<(String, Vec<f64>)>,
}

impl ConvergenceStudy {
    pub fn new(parameter: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(VmsError::TooFewSamples {
                needed: 3,
                got: values.len(),
            });
        }
        let increasing = values.windows(2).all(|w| w[1] > w[0]);
        let decreasing = values.windows(2).all(|w| w[1] < w[0]);
        if !(increasing || decreasing) {
            return Err(VmsError::InvalidParameter {
                name: "values",
                reason: "samples must be strictly monotone".into(),
            });
        }
        Ok(Self {
            parameter: parameter.into(),
            values,
            errors: Vec::new(),
        })
    }

    pub fn add_norm(&mut self, name: impl Into<String>, errors: Vec<f64>) -> Result<()> {
        if errors.len() != self.values.len() {
            return Err(VmsError::DimensionMismatch(format!(
                "{} errors for {} samples",
                errors.len(),
                self.values.len()
            )));
        }
        self.errors.push((name.into(), errors));
        Ok(())
    }

    pub fn slopes(&self) -> Result<Vec<(String, SlopeFit)>> {
        self.errors
            .iter()
            .map(|(name, e)| Ok((name.clone(), convergence_slope(&self.values, e)?)))
            .collect()
    }

    pub fn slope(&self, norm: &str) -> Option<f64> {
        let (_, e) = self.errors.iter().find(|(n, _)| n == norm)?;
        convergence_slope(&self.values, e).ok().map(|f| f.slope)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CflQuantities {
    /// Element Peclet number `h |c| / (2 mu)`.
    pub p_h: f64,
    /// `|c| k / h`.
    pub cfl: f64,
    /// `P_h / (3 (1 - P_h))`.
    pub cfl_bound: f64,
}

pub fn cfl_quantities(c: f64, mu: f64, h: f64, k: f64) -> Result<CflQuantities> {
    ensure_positive("mu", mu)?;
    ensure_positive("h", h)?;
    ensure_positive("k", k)?;
    let p_h = h * c.abs() / (2.0 * mu);
    if p_h >= 1.0 {
        return Err(VmsError::PecletAboveOne(p_h));
    }
    Ok(CflQuantities {
        p_h,
        cfl: c.abs() * k / h,
        cfl_bound: p_h / (3.0 * (1.0 - p_h)),
    })
}

/// Time step with `CFL = ratio * CFL_bound`.
pub fn time_step_for_cfl_ratio(c: f64, mu: f64, h: f64, ratio: f64) -> Result<f64> {
    ensure_positive("ratio", ratio)?;
    if c == 0.0 {
        return Err(VmsError::InvalidParameter {
            name: "c",
            reason: "a CFL-based time step needs nonzero velocity".into(),
        });
    }
    let q = cfl_quantities(c, mu, h, 1.0)?;
    Ok(ratio * q.cfl_bound * h / c.abs())
}

pub fn total_variation(field: &[f64]) -> f64 {
    field.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// `max(0, max u - hi) + max(0, lo - min u) + max(0, TV(u) - tv_reference)`.
pub fn overshoot_metric(field: &[f64], (lo, hi): (f64, f64), tv_reference: f64) -> f64 {
    let max = field.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = field.iter().cloned().fold(f64::INFINITY, f64::min);
    (max - hi).max(0.0) + (lo - min).max(0.0) + (total_variation(field) - tv_reference).max(0.0)
}
