//! Browser bindings for the spectral VMS solvers.
//!
//! Every export is a thin wrapper around a plain Rust function, so the numerics
//! behind the page are testable without a JavaScript host.

use wasm_bindgen::prelude::*;

use vms_core::analysis::{exact_stationary, overshoot_metric};
use vms_core::green::tau_pair;
use vms_core::solvers::solve_evolutive_steps;
use vms_core::{build_mesh, solve_stationary, EvolutiveProblem, InitialCondition, SolverMode, StationaryProblem};

fn max_error(u: &[f64], reference: &[f64]) -> f64 {
    u.iter().zip(reference).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

/// Nodal profiles of the stationary problem `gamma u + c u' - mu u'' = 0`, `u(0)=0`, `u(1)=1`.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct StationaryCurves {
    x: Vec<f64>,
    exact: Vec<f64>,
    galerkin: Vec<f64>,
    spectral: Vec<f64>,
}

#[wasm_bindgen]
impl StationaryCurves {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn galerkin(&self) -> Vec<f64> {
        self.galerkin.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn spectral(&self) -> Vec<f64> {
        self.spectral.clone()
    }
    /// Max nodal error of the Galerkin solution.
    #[wasm_bindgen(getter)]
    pub fn galerkin_error(&self) -> f64 {
        max_error(&self.galerkin, &self.exact)
    }
    /// Max nodal error of the spectral solution.
    #[wasm_bindgen(getter)]
    pub fn spectral_error(&self) -> f64 {
        max_error(&self.spectral, &self.exact)
    }
}

pub fn stationary_curves(
    gamma: f64,
    c: f64,
    mu: f64,
    n_elements: usize,
    modes: usize,
) -> Result<StationaryCurves, String> {
    let mesh = build_mesh(n_elements).map_err(|e| e.to_string())?;
    let p = StationaryProblem::new(gamma, c, mu);
    let solve = |mode| solve_stationary(&p, &mesh, mode).map_err(|e| e.to_string());
    Ok(StationaryCurves {
        x: mesh.nodes().to_vec(),
        exact: mesh.sample(|x| exact_stationary(x, gamma, c, mu)),
        galerkin: solve(SolverMode::Galerkin)?,
        spectral: solve(SolverMode::SpectralVms { modes })?,
    })
}

/// Solves the stationary problem with Galerkin and with `modes` spectral modes.
#[wasm_bindgen(js_name = stationary)]
pub fn stationary_js(gamma: f64, c: f64, mu: f64, n_elements: usize, modes: usize) -> Result<StationaryCurves, JsValue> {
    stationary_curves(gamma, c, mu, n_elements, modes).map_err(|e| JsValue::from_str(&e))
}

/// Backward Euler trajectories from the box initial data, stored step by step.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct EvolutiveCurves {
    x: Vec<f64>,
    galerkin: Vec<f64>,
    spectral: Vec<f64>,
    steps: usize,
    galerkin_overshoot: f64,
    spectral_overshoot: f64,
}

#[wasm_bindgen]
impl EvolutiveCurves {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }
    /// Galerkin nodal values for steps `0..=steps`, concatenated.
    #[wasm_bindgen(getter)]
    pub fn galerkin(&self) -> Vec<f64> {
        self.galerkin.clone()
    }
    /// Spectral nodal values for steps `0..=steps`, concatenated.
    #[wasm_bindgen(getter)]
    pub fn spectral(&self) -> Vec<f64> {
        self.spectral.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn steps(&self) -> usize {
        self.steps
    }
    /// Largest overshoot over steps `1..=steps`.
    #[wasm_bindgen(getter)]
    pub fn galerkin_overshoot(&self) -> f64 {
        self.galerkin_overshoot
    }
    #[wasm_bindgen(getter)]
    pub fn spectral_overshoot(&self) -> f64 {
        self.spectral_overshoot
    }
}

pub fn evolutive_curves(
    c: f64,
    mu: f64,
    n_elements: usize,
    k: f64,
    steps: usize,
    modes: usize,
) -> Result<EvolutiveCurves, String> {
    if steps == 0 {
        return Err("steps must be at least 1".into());
    }
    let mesh = build_mesh(n_elements).map_err(|e| e.to_string())?;
    let mut p = EvolutiveProblem::new(c, mu, k, steps as f64 * k);
    p.initial = InitialCondition::Box { lo: 0.2, hi: 0.7 };
    let run = |mode| {
        let t = solve_evolutive_steps(&p, &mesh, mode, steps).map_err(|e| e.to_string())?;
        let u0 = &t.fields[0];
        let lo = u0.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = u0.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let tv0 = vms_core::analysis::total_variation(u0);
        let over = t.fields[1..]
            .iter()
            .map(|u| overshoot_metric(u, (lo, hi), tv0))
            .fold(0.0, f64::max);
        Ok::<_, String>((t.fields.concat(), over))
    };
    let (galerkin, galerkin_overshoot) = run(SolverMode::Galerkin)?;
    let (spectral, spectral_overshoot) = run(SolverMode::SpectralVms { modes })?;
    Ok(EvolutiveCurves {
        x: mesh.nodes().to_vec(),
        galerkin,
        spectral,
        steps,
        galerkin_overshoot,
        spectral_overshoot,
    })
}

/// Runs `steps` backward Euler steps from the box `[0.2, 0.7]`.
#[wasm_bindgen(js_name = evolutive)]
pub fn evolutive_js(c: f64, mu: f64, n_elements: usize, k: f64, steps: usize, modes: usize) -> Result<EvolutiveCurves, JsValue> {
    evolutive_curves(c, mu, n_elements, k, steps, modes).map_err(|e| JsValue::from_str(&e))
}

/// `|tau - tau^M|` for `M = 1..=max_modes`; the last entry is the exact `tau`.
pub fn tau_errors(k: f64, peclet: f64, mu: f64, h: f64, max_modes: usize) -> Result<Vec<f64>, String> {
    let c = 2.0 * mu * peclet / h;
    let mut out = Vec::with_capacity(max_modes + 1);
    let mut exact = 0.0;
    for m in 1..=max_modes {
        let p = tau_pair(k, c, mu, h, m).map_err(|e| e.to_string())?;
        exact = p.tau_exact;
        out.push((p.tau_exact - p.tau_truncated).abs());
    }
    out.push(exact);
    Ok(out)
}

/// Truncation error of the stabilization coefficient at element Peclet number `c h / (2 mu)`.
#[wasm_bindgen(js_name = tauErrors)]
pub fn tau_errors_js(k: f64, peclet: f64, mu: f64, h: f64, max_modes: usize) -> Result<Vec<f64>, JsValue> {
    tau_errors(k, peclet, mu, h, max_modes).map_err(|e| JsValue::from_str(&e))
}
