use vms_core::analysis::exact_stationary;
use vms_core::harness::run_preset;
use vms_core::solvers::{step_evolutive, step_evolutive_tau};
use vms_core::{
    build_mesh, solve_evolutive, solve_stationary, AffineSource, EvolutiveProblem, InitialCondition,
    SolutionTrajectory, SolverMode, StationaryProblem, TauChoice, VmsError,
};

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn trajectory_diff(a: &SolutionTrajectory, b: &SolutionTrajectory) -> f64 {
    a.fields
        .iter()
        .zip(&b.fields)
        .fold(0.0, |m, (x, y)| m.max(max_diff(x, y)))
}

#[test]
fn odd_modes_give_monotone_stationary_solutions() {
    let mesh = build_mesh(40).unwrap();
    let p = StationaryProblem::new(1.0, 400.0, 1.0);
    for m in (1..=41).step_by(2) {
        let u = solve_stationary(&p, &mesh, SolverMode::SpectralVms { modes: m }).unwrap();
        assert!(u.windows(2).all(|w| w[1] >= w[0] - 1e-12), "M={m} not monotone");
        assert!(u.iter().all(|&v| (-1e-6..=1.0 + 1e-6).contains(&v)), "M={m} overshoots");
    }
    // Galerkin oscillates at this Peclet number.
    let g = solve_stationary(&p, &mesh, SolverMode::Galerkin).unwrap();
    assert!(g.iter().any(|&v| v < -1e-2));
}

#[test]
fn reaction_dominated_many_modes_beat_galerkin() {
    let mesh = build_mesh(40).unwrap();
    let p = StationaryProblem::new(1000.0, 1.0, 1.0);
    let exact = mesh.sample(|x| exact_stationary(x, 1000.0, 1.0, 1.0));
    let g = solve_stationary(&p, &mesh, SolverMode::Galerkin).unwrap();
    let s = solve_stationary(&p, &mesh, SolverMode::SpectralVms { modes: 41 }).unwrap();
    assert!(max_diff(&s, &exact) * 5.0 <= max_diff(&g, &exact));
    assert!(s.iter().all(|&v| (0.0..=1.0 + 1e-6).contains(&v)));
}

#[test]
fn zero_data_stays_zero() {
    let mesh = build_mesh(20).unwrap();
    let mut p = EvolutiveProblem::new(50.0, 1.0, 1e-2, 0.1);
    p.initial = InitialCondition::Nodal(vec![0.0; 21]);
    for mode in [
        SolverMode::Galerkin,
        SolverMode::SpectralVms { modes: 7 },
        SolverMode::TauVms(TauChoice::Exact),
    ] {
        let t = solve_evolutive(&p, &mesh, mode).unwrap();
        assert!(t.fields.iter().flatten().all(|&v| v == 0.0));
    }
}

#[test]
fn galerkin_heat_equation_is_l2_stable() {
    let mesh = build_mesh(30).unwrap();
    let mut p = EvolutiveProblem::new(0.0, 1.0, 1e-3, 2e-2);
    p.initial = InitialCondition::Box { lo: 0.2, hi: 0.7 };
    let t = solve_evolutive(&p, &mesh, SolverMode::Galerkin).unwrap();
    let norms: Vec<f64> = t
        .fields
        .iter()
        .skip(1)
        .map(|u| vms_core::analysis::p1_norms(u, mesh.h()).0)
        .collect();
    assert!(norms.windows(2).all(|w| w[1] <= w[0] + 1e-15));
}

#[test]
fn single_step_matches_step_function() {
    let mesh = build_mesh(25).unwrap();
    let mut p = EvolutiveProblem::new(3.0, 0.5, 1e-2, 1e-2);
    p.initial = InitialCondition::Sine;
    p.source = AffineSource::new(1.0, -2.0);
    let u0 = p.initial.nodal(&mesh, p.c, p.mu).unwrap();
    for mode in [SolverMode::Galerkin, SolverMode::SpectralVms { modes: 5 }] {
        let t = solve_evolutive(&p, &mesh, mode).unwrap();
        let s = step_evolutive(&u0, &p, &mesh, mode).unwrap();
        assert_eq!(t.fields[1], s);
    }
    let t = solve_evolutive(&p, &mesh, SolverMode::TauVms(TauChoice::Truncated(9))).unwrap();
    let s = step_evolutive_tau(&u0, &p, &mesh, TauChoice::Truncated(9)).unwrap();
    assert_eq!(t.fields[1], s);
}

#[test]
fn boundary_values_exact_every_step() {
    let mesh = build_mesh(40).unwrap();
    let mut p = EvolutiveProblem::new(100.0, 1.0, 1e-3, 1e-2);
    p.source = AffineSource::new(0.0, 5.0);
    let t = solve_evolutive(&p, &mesh, SolverMode::SpectralVms { modes: 9 }).unwrap();
    for u in &t.fields {
        assert_eq!(u[0], 0.0);
        assert_eq!(u[40], 0.0);
    }
}

#[test]
fn spectral_and_tau_forms_agree_within_order_h() {
    let mut p = EvolutiveProblem::new(1.0, 1.0, 1e-2, 0.1);
    p.initial = InitialCondition::Sine;
    for n in [10, 20, 50, 100] {
        let mesh = build_mesh(n).unwrap();
        let a = solve_evolutive(&p, &mesh, SolverMode::SpectralVms { modes: 10 }).unwrap();
        let b = solve_evolutive(&p, &mesh, SolverMode::TauVms(TauChoice::Truncated(10))).unwrap();
        let u_max = a.fields.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(trajectory_diff(&a, &b) <= 0.5 * mesh.h() * u_max, "n={n}");
    }
}

#[test]
fn truncated_tau_solutions_approach_exact_tau() {
    // Box data, c = 1000, h = 1/50, k = 1e-3, five steps.
    let p = EvolutiveProblem::new(1000.0, 1.0, 1e-3, 5e-3);
    let mesh = build_mesh(50).unwrap();
    let exact = solve_evolutive(&p, &mesh, SolverMode::TauVms(TauChoice::Exact)).unwrap();
    let diffs: Vec<f64> = [41, 81, 161, 321]
        .iter()
        .map(|&m| {
            let t = solve_evolutive(&p, &mesh, SolverMode::TauVms(TauChoice::Truncated(m))).unwrap();
            trajectory_diff(&exact, &t)
        })
        .collect();
    assert!(diffs[0] < 1e-3);
    // Roughly fourth order: every doubling of M gains more than a factor 8.
    assert!(diffs.windows(2).all(|w| w[1] * 8.0 < w[0]), "{diffs:?}");
    assert!(diffs[3] <= 1e-6, "{diffs:?}");
}

#[test]
fn odd_mode_presets_respect_initial_bounds() {
    for (name, curve) in [("fig-ev1", "spectral:15"), ("fig-hauke", "spectral:11"), ("fig-ev1step", "spectral:5")] {
        let out = run_preset(name).unwrap();
        let sol = out.cases[0].table("solution.csv").unwrap();
        let vals = sol.column(curve).unwrap();
        assert!(vals.iter().all(|&v| (-1e-6..=1.0 + 1e-6).contains(&v)), "{name}");
    }
    let out = run_preset("fig-rcd1a").unwrap();
    let sol = out.cases[0].table("solution.csv").unwrap();
    for curve in ["spectral:3", "spectral:15"] {
        assert!(sol.column(curve).unwrap().iter().all(|&v| (0.0 - 1e-6..=1.0 + 1e-6).contains(&v)));
    }
}

#[test]
fn solver_runs_are_bitwise_deterministic() {
    let p = EvolutiveProblem::new(400.0, 1.0, 1e-4, 1e-3);
    let mesh = build_mesh(50).unwrap();
    let a = solve_evolutive(&p, &mesh, SolverMode::SpectralVms { modes: 15 }).unwrap();
    let b = solve_evolutive(&p, &mesh, SolverMode::SpectralVms { modes: 15 }).unwrap();
    let bits = |t: &SolutionTrajectory| t.fields.iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn step_failures_carry_the_step_index() {
    let mesh = build_mesh(4).unwrap();
    let p = EvolutiveProblem::new(1e9, 1e-6, 1.0, 2.0);
    let err = solve_evolutive(&p, &mesh, SolverMode::SpectralVms { modes: 3 }).unwrap_err();
    assert!(matches!(err, VmsError::StepFailed { step: 1, .. }), "{err:?}");
}

#[test]
fn time_grid_mismatch_is_rejected() {
    let mesh = build_mesh(4).unwrap();
    let p = EvolutiveProblem::new(1.0, 1.0, 0.3, 1.0);
    assert!(matches!(
        solve_evolutive(&p, &mesh, SolverMode::Galerkin),
        Err(VmsError::TimeGridMismatch { .. })
    ));
}
