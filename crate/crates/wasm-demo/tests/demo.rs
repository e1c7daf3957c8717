use vms_wasm_demo::{evolutive_curves, stationary_curves, tau_errors};

#[test]
fn stationary_spectral_beats_galerkin() {
    let s = stationary_curves(1.0, 400.0, 1.0, 40, 15).unwrap();
    assert_eq!(s.x().len(), 41);
    assert!(s.spectral_error() < s.galerkin_error());
}

#[test]
fn evolutive_odd_modes_do_not_overshoot() {
    let e = evolutive_curves(1000.0, 1.0, 50, 1e-3, 5, 15).unwrap();
    assert_eq!(e.galerkin().len(), 6 * 51);
    assert!(e.galerkin_overshoot() > 1e-2);
    assert!(e.spectral_overshoot() < 1e-3);
    assert!(evolutive_curves(1.0, 1.0, 10, 1e-2, 0, 3).is_err());
}

#[test]
fn tau_errors_decrease_over_odd_modes() {
    let v = tau_errors(1e-3, 1.0, 1.0, 0.02, 21).unwrap();
    assert_eq!(v.len(), 22);
    let odd: Vec<f64> = v[2..21].iter().step_by(2).cloned().collect();
    assert!(odd.windows(2).all(|w| w[1] < w[0]), "{odd:?}");
}

#[test]
fn invalid_input_is_reported() {
    assert!(stationary_curves(1.0, 1.0, 0.0, 10, 3).is_err());
    assert!(stationary_curves(1.0, 1.0, 1.0, 1, 3).is_err());
}
