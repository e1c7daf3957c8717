//! Element bubble, stabilization coefficients and the truncated Green's function.
//!
//! The bubble `b` solves `b + A b' - D b'' = 1` on `(0, 1)` with `b(0) = b(1) = 0`,
//! where `A = k c / h` and `D = k mu / h^2`. Its characteristic roots satisfy
//! `D L^2 - A L - 1 = 0`, so `L1 < 0 < L2`.

use crate::error::{ensure_finite, ensure_positive, Result, VmsError};
use crate::spectral::{ElementSpectralBasis, OperatorScaling};

/// Characteristic roots `(L1, L2)` of the bubble problem, computed without cancellation.
pub fn bubble_roots(k: f64, c: f64, mu: f64, h: f64) -> Result<(f64, f64)> {
    ensure_positive("k", k)?;
    ensure_positive("mu", mu)?;
    ensure_positive("h", h)?;
    ensure_finite("c", c)?;
    let a = k * c / h;
    let d = k * mu / (h * h);
    let disc = (a * a + 4.0 * d).sqrt();
    // The root of larger magnitude comes from the sum; the other from L1 L2 = -1 / D.
    let (l1, l2) = if a >= 0.0 {
        let l2 = (a + disc) / (2.0 * d);
        (-1.0 / (d * l2), l2)
    } else {
        let l1 = (a - disc) / (2.0 * d);
        (l1, -1.0 / (d * l1))
    };
    if !(l1.is_finite() && l2.is_finite()) || l1 == l2 {
        return Err(VmsError::DegenerateBubble);
    }
    Ok((l1, l2))
}

/// Bubble value at reference coordinate `xhat` in `[0, 1]`.
///
/// Written as `1 - e^{L1 x} (1 - e^{-L2}) / (1 - e^{L1 - L2}) + (e^{L1} - 1) e^{L2 (x - 1)} / (1 - e^{L1 - L2})`,
/// where every exponential has a nonpositive argument.
pub fn bubble_eval(xhat: f64, k: f64, c: f64, mu: f64, h: f64) -> Result<f64> {
    let (l1, l2) = bubble_roots(k, c, mu, h)?;
    let den = -(l1 - l2).exp_m1();
    if den == 0.0 {
        return Err(VmsError::DegenerateBubble);
    }
    let left = (l1 * xhat).exp() * (-(-l2).exp_m1()) / den;
    let right = l1.exp_m1() * (l2 * (xhat - 1.0)).exp() / den;
    Ok(1.0 - left + right)
}

/// Coefficients of `ln(sinh x / x) = sum_n C_n x^{2n}` for `n = 1..7`.
const LOG_SINHC: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 180.0,
    1.0 / 2835.0,
    -1.0 / 37800.0,
    1.0 / 467_775.0,
    -691.0 / 3_831_077_250.0,
    2.0 / 127_702_575.0,
];

/// `ln(sinh x / x)` for `x >= 0`.
fn log_sinhc(x: f64) -> f64 {
    let x = x.abs();
    if x < 0.25 {
        let x2 = x * x;
        let mut acc = 0.0;
        for c in LOG_SINHC.iter().rev() {
            acc = acc * x2 + c;
        }
        acc * x2
    } else if x > 20.0 {
        x - (2.0 * x).ln()
    } else {
        (x.sinh() / x).ln()
    }
}

/// `log_sinhc(x) - log_sinhc(y)` for `x, y >= 0`, with `dxy = x - y` supplied exactly.
fn log_sinhc_diff(x: f64, y: f64, dxy: f64) -> f64 {
    if x.max(y) < 0.25 {
        // x^{2n} - y^{2n} = (x^2 - y^2) sum_{i<n} x^{2i} y^{2(n-1-i)}
        let (x2, y2) = (x * x, y * y);
        let mut total = 0.0;
        for (n, c) in LOG_SINHC.iter().enumerate() {
            let mut s = 0.0;
            for i in 0..=n {
                s += x2.powi(i as i32) * y2.powi((n - i) as i32);
            }
            total += c * s;
        }
        dxy * (x + y) * total
    } else if x.min(y) > 1.0 {
        dxy - (dxy / y).ln_1p() + (-(-2.0 * x).exp()).ln_1p() - (-(-2.0 * y).exp()).ln_1p()
    } else {
        log_sinhc(x) - log_sinhc(y)
    }
}

/// Mean of the bubble over the reference element.
///
/// With `a = |L1| / 2` and `b = |L2| / 2` the mean equals
/// `1 - exp(S(a) + S(b) - S(a + b))` where `S(x) = ln(sinh x / x)`.
pub fn tau_exact(k: f64, c: f64, mu: f64, h: f64) -> Result<f64> {
    let (l1, l2) = bubble_roots(k, c, mu, h)?;
    let (a, b) = (0.5 * l1.abs(), 0.5 * l2.abs());
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    let phi = log_sinhc(small) + log_sinhc_diff(big, big + small, -small);
    Ok(-phi.exp_m1())
}

/// `(1/h) sum_j beta_j (int_K p z_j)(int_K z_j)`.
pub fn tau_truncated(basis: &ElementSpectralBasis) -> f64 {
    let mut acc = 0.0;
    for mode in &basis.modes {
        let m = basis.moments(mode.j).expect("mode index taken from the basis");
        acc += mode.beta * m.integral_pz() * m.integral_z();
    }
    acc / basis.h()
}

/// `sum_j beta_j (p z_j)(y) z_j(x)`.
pub fn green_truncated(basis: &ElementSpectralBasis, x: f64, y: f64) -> f64 {
    basis
        .modes
        .iter()
        .map(|m| m.beta * basis.pz(m.j, y) * basis.z(m.j, x))
        .sum()
}

/// Element Peclet number `|c| h / mu`.
pub fn peclet_number(c: f64, mu: f64, h: f64) -> f64 {
    c.abs() * h / mu
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauPair {
    pub tau_exact: f64,
    pub tau_truncated: f64,
    pub m: usize,
    pub peclet: f64,
}

/// Both coefficients for one backward Euler step on an element of length `h`.
pub fn tau_pair(k: f64, c: f64, mu: f64, h: f64, m: usize) -> Result<TauPair> {
    let scaling = OperatorScaling::evolutive(k, c, mu)?;
    let basis = ElementSpectralBasis::on_interval(0, 0.0, h, scaling, m)?;
    Ok(TauPair {
        tau_exact: tau_exact(k, c, mu, h)?,
        tau_truncated: tau_truncated(&basis),
        m,
        peclet: peclet_number(c, mu, h),
    })
}

/// `sum_j beta_j` over the modes of `basis`.
pub fn beta_sum(basis: &ElementSpectralBasis) -> f64 {
    basis.modes.iter().map(|m| m.beta).sum()
}

/// Upper bound `h^2 / (6 mu_eff)` on `sum_j beta_j`; `mu_eff = k mu` for a time step.
pub fn beta_sum_bound(basis: &ElementSpectralBasis) -> f64 {
    let h = basis.h();
    h * h / (6.0 * basis.scaling.mu_eff)
}

/// Upper bound on `int int |g^M|^2` over `K x K`:
/// `(max p / min p) pi^4 h^4 / (36 mu_eff^2)`.
pub fn green_l2_bound(basis: &ElementSpectralBasis) -> f64 {
    let h = basis.h();
    let ratio = (2.0 * basis.alpha().abs()).exp();
    let mu = basis.scaling.mu_eff;
    ratio * std::f64::consts::PI.powi(4) * h.powi(4) / (36.0 * mu * mu)
}
