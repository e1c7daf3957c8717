use proptest::prelude::*;

use vms_core::analysis::{convergence_slope, exact_stationary, p1_norms};
use vms_core::green::{beta_sum, beta_sum_bound, green_truncated};
use vms_core::stabilization::LocalBlocks;
use vms_core::{thomas_solve, ElementSpectralBasis, OperatorScaling, TridiagonalMatrix};

/// Gaussian elimination with partial pivoting on a dense copy.
fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

fn dominant_system() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
    (2usize..40).prop_flat_map(|n| {
        (
            prop::collection::vec(-1.0..1.0f64, n - 1),
            prop::collection::vec(-1.0..1.0f64, n - 1),
            prop::collection::vec(2.5..10.0f64, n),
            prop::collection::vec(-10.0..10.0f64, n),
        )
    })
}

fn blocks_close(a: &LocalBlocks, b: &LocalBlocks, rel: f64) -> bool {
    [(a.b1, b.b1), (a.b2, b.b2), (a.b3, b.b3), (a.b4, b.b4)]
        .iter()
        .all(|(x, y)| {
            let scale = x.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
            x.iter()
                .flatten()
                .zip(y.iter().flatten())
                .all(|(p, q)| (p - q).abs() <= rel * scale)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn thomas_matches_dense_elimination((sub, sup, diag, rhs) in dominant_system()) {
        let m = TridiagonalMatrix::from_diagonals(sub, diag, sup).unwrap();
        let x = thomas_solve(&m, &rhs).unwrap();
        let y = dense_solve(m.to_dense(), rhs.clone());
        for (a, b) in x.iter().zip(&y) {
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        }
        let r = m.mul_vec(&x);
        for (a, b) in r.iter().zip(&rhs) {
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn blocks_are_gauge_invariant(
        gamma in 0.0..100.0f64,
        c in -500.0..500.0f64,
        mu in 0.1..10.0f64,
        n in 10usize..100,
        m in 1usize..30,
    ) {
        let s = OperatorScaling::stationary(gamma, c, mu).unwrap();
        let b = ElementSpectralBasis::on_interval(0, 0.0, 1.0 / n as f64, s, m).unwrap();
        let reference = LocalBlocks::from_basis(&b);
        for gauge in [1e-30, 1.0, 1e30] {
            let g = LocalBlocks::from_basis(&b.clone().with_gauge(gauge).unwrap());
            prop_assert!(blocks_close(&reference, &g, 1e-12));
        }
    }

    #[test]
    fn beta_sum_below_bound(
        k in 1e-5..1e-1f64,
        c in -1000.0..1000.0f64,
        mu in 0.1..10.0f64,
        n in 10usize..200,
        m in 1usize..200,
    ) {
        let h = 1.0 / n as f64;
        let s = OperatorScaling::evolutive(k, c, mu).unwrap();
        prop_assume!(s.alpha(h).abs() <= 300.0);
        let b = ElementSpectralBasis::on_interval(0, 0.0, h, s, m).unwrap();
        prop_assert!(beta_sum(&b) <= beta_sum_bound(&b));
    }

    #[test]
    fn green_swap_symmetry(
        c in -200.0..200.0f64,
        m in 1usize..25,
        x in 0.0..1.0f64,
        y in 0.0..1.0f64,
    ) {
        let h = 0.02;
        let s = OperatorScaling::evolutive(1e-3, c, 1.0).unwrap();
        let b = ElementSpectralBasis::on_interval(0, 0.0, h, s, m).unwrap();
        let (x, y) = (x * h, y * h);
        let lhs = green_truncated(&b, x, y) / b.weight(y);
        let rhs = green_truncated(&b, y, x) / b.weight(x);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1e-300));
    }

    #[test]
    fn p1_norm_axioms(
        e1 in prop::collection::vec(-5.0..5.0f64, 11),
        e2 in prop::collection::vec(-5.0..5.0f64, 11),
        s in -10.0..10.0f64,
    ) {
        let h = 0.1;
        let (l2, h1) = p1_norms(&e1, h);
        let scaled: Vec<f64> = e1.iter().map(|v| s * v).collect();
        let (sl2, sh1) = p1_norms(&scaled, h);
        prop_assert!((sl2 - s.abs() * l2).abs() <= 1e-12 * (1.0 + sl2));
        prop_assert!((sh1 - s.abs() * h1).abs() <= 1e-12 * (1.0 + sh1));
        let sum: Vec<f64> = e1.iter().zip(&e2).map(|(a, b)| a + b).collect();
        let (al2, ah1) = p1_norms(&e2, h);
        let (tl2, th1) = p1_norms(&sum, h);
        prop_assert!(tl2 <= l2 + al2 + 1e-12);
        prop_assert!(th1 <= h1 + ah1 + 1e-12);
    }

    #[test]
    fn slope_exact_on_power_laws(p in -6.0..6.0f64, scale in 1e-6..1e6f64) {
        let x = [0.1, 0.05, 0.025, 0.0125, 0.00625];
        let y: Vec<f64> = x.iter().map(|v: &f64| scale * v.powf(p)).collect();
        let fit = convergence_slope(&x, &y).unwrap();
        prop_assert!((fit.slope - p).abs() <= 1e-10);
    }

    #[test]
    fn exact_solution_reduces_without_reaction(c in -20.0..20.0f64, mu in 0.5..5.0f64, x in 0.0..1.0f64) {
        prop_assume!(c.abs() > 1e-3);
        let expected = (c * x / mu).exp_m1() / (c / mu).exp_m1();
        let v = exact_stationary(x, 0.0, c, mu);
        prop_assert!((v - expected).abs() <= 1e-12 * expected.abs().max(1e-300));
    }
}
