//! Element eigenmodes of the scaled advection-diffusion-reaction operator.
//!
//! On an element `K = [x_L, x_L + h]` with local coordinate `s = (x - x_L) / h`
//! the normalized eigenfunctions are
//! `z_j(x) = sqrt(2/h) psi(x) sin(j pi s)` with `psi(x) = exp(alpha s)`,
//! `alpha = c h / (2 mu)`, and weight `p = psi^-2`.
//! All moments against P1 functions reduce to the integrals
//! `I0 = int_0^1 e^{a s} sin(b s) ds` and `I1 = int_0^1 s e^{a s} sin(b s) ds`,
//! evaluated here in a form that has no cancellation as `a -> 0`.

use std::f64::consts::PI;

use crate::error::{ensure_finite, ensure_positive, Result, VmsError};
use crate::fem::Mesh1D;

/// Largest `|alpha|` accepted before the exponential factors lose all precision.
pub const MAX_ELEMENT_EXPONENT: f64 = 300.0;

/// Coefficients `(gamma, c, mu)` of the operator whose eigenpairs are used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorScaling {
    pub gamma_eff: f64,
    pub c_eff: f64,
    pub mu_eff: f64,
}

impl OperatorScaling {
    pub fn new(gamma_eff: f64, c_eff: f64, mu_eff: f64) -> Result<Self> {
        ensure_positive("mu", mu_eff)?;
        ensure_finite("c", c_eff)?;
        ensure_finite("gamma", gamma_eff)?;
        if gamma_eff < 0.0 {
            return Err(VmsError::InvalidParameter {
                name: "gamma",
                reason: format!("must be nonnegative, got {gamma_eff}"),
            });
        }
        Ok(Self {
            gamma_eff,
            c_eff,
            mu_eff,
        })
    }

    /// Scaling of the stationary problem: the coefficients themselves.
    pub fn stationary(gamma: f64, c: f64, mu: f64) -> Result<Self> {
        Self::new(gamma, c, mu)
    }

    /// Scaling of one backward Euler step: `(1, k c, k mu)`.
    pub fn evolutive(k: f64, c: f64, mu: f64) -> Result<Self> {
        ensure_positive("k", k)?;
        Self::new(1.0, k * c, k * mu)
    }

    /// `alpha = c h / (2 mu)` for an element of length `h`.
    pub fn alpha(&self, h: f64) -> f64 {
        self.c_eff * h / (2.0 * self.mu_eff)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenMode {
    pub j: usize,
    pub sigma: f64,
    pub eta: f64,
    pub beta: f64,
}

/// `(j pi / h)^2`.
pub fn laplace_eigenvalue(j: usize, h: f64) -> Result<f64> {
    if j == 0 {
        return Err(VmsError::InvalidModeIndex(j));
    }
    ensure_positive("h", h)?;
    let w = j as f64 * PI / h;
    Ok(w * w)
}

/// `gamma + mu (sigma_j + c^2 / (4 mu^2))`.
pub fn operator_eigenvalue(j: usize, scaling: &OperatorScaling, h: f64) -> Result<f64> {
    let sigma = laplace_eigenvalue(j, h)?;
    let OperatorScaling {
        gamma_eff: g,
        c_eff: c,
        mu_eff: mu,
    } = *scaling;
    Ok(g + mu * sigma + c * c / (4.0 * mu))
}

pub fn eigen_mode(j: usize, scaling: &OperatorScaling, h: f64) -> Result<EigenMode> {
    let sigma = laplace_eigenvalue(j, h)?;
    let eta = operator_eigenvalue(j, scaling, h)?;
    Ok(EigenMode {
        j,
        sigma,
        eta,
        beta: 1.0 / eta,
    })
}

/// `(int_0^1 e^{a s} sin(j pi s) ds, int_0^1 s e^{a s} sin(j pi s) ds)`.
pub fn exp_sine_moments(a: f64, j: usize) -> (f64, f64) {
    let b = j as f64 * PI;
    let odd = j % 2 == 1;
    let sign = if odd { -1.0 } else { 1.0 };
    // E = (-1)^j e^a and 1 - E, the latter without cancellation.
    let e = sign * a.exp();
    let one_minus_e = if odd { 1.0 + a.exp() } else { -a.exp_m1() };
    let z2 = a * a + b * b;
    let i0 = b * one_minus_e / z2;
    let i1 = -b * e / z2 - 2.0 * a * b * one_minus_e / (z2 * z2);
    (i0, i1)
}

/// Side of an element-restricted hat function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalNode {
    Left,
    Right,
}

impl LocalNode {
    pub fn index(self) -> usize {
        match self {
            LocalNode::Left => 0,
            LocalNode::Right => 1,
        }
    }
}

/// The four inner products of one hat function with one eigenmode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedInnerProducts {
    /// `(phi, p z_j)`
    pub phi_pz: f64,
    /// `(phi', p z_j)`
    pub dphi_pz: f64,
    /// `(phi, z_j)`
    pub phi_z: f64,
    /// `(phi', z_j)`
    pub dphi_z: f64,
}

/// Moments of one mode against both hat functions, indexed by local node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMoments {
    /// `(phi_a, p z_j)`
    pub p: [f64; 2],
    /// `(phi_a', p z_j)`
    pub dp: [f64; 2],
    /// `(phi_a, z_j)`
    pub z: [f64; 2],
    /// `(phi_a', z_j)`
    pub dz: [f64; 2],
}

impl ModeMoments {
    /// `int_K p z_j`
    pub fn integral_pz(&self) -> f64 {
        self.p[0] + self.p[1]
    }

    /// `int_K z_j`
    pub fn integral_z(&self) -> f64 {
        self.z[0] + self.z[1]
    }
}

/// Closed-form moments of mode `j` on an element of length `h` with exponent `alpha`,
/// with `z` multiplied and `p z` divided by `gauge`.
pub fn mode_moments(h: f64, alpha: f64, j: usize, gauge: f64) -> ModeMoments {
    let s = (2.0 / h).sqrt();
    let (i0m, i1m) = exp_sine_moments(-alpha, j);
    let (i0p, i1p) = exp_sine_moments(alpha, j);
    let sp = s / gauge;
    let sz = s * gauge;
    ModeMoments {
        p: [sp * h * (i0m - i1m), sp * h * i1m],
        dp: [-sp * i0m, sp * i0m],
        z: [sz * h * (i0p - i1p), sz * h * i1p],
        dz: [-sz * i0p, sz * i0p],
    }
}

/// Eigenmodes `1..=M` on one element.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementSpectralBasis {
    pub element: usize,
    pub x_left: f64,
    pub x_right: f64,
    pub scaling: OperatorScaling,
    pub modes: Vec<EigenMode>,
    /// Constant multiplying the local exponential factor `psi`.
    pub gauge: f64,
}

impl ElementSpectralBasis {
    pub fn new(mesh: &Mesh1D, element: usize, scaling: OperatorScaling, m: usize) -> Result<Self> {
        if element >= mesh.n_elements() {
            return Err(VmsError::DimensionMismatch(format!(
                "element {element} outside mesh with {} elements",
                mesh.n_elements()
            )));
        }
        let (x_left, x_right) = mesh.element(element);
        Self::on_interval(element, x_left, x_right, scaling, m)
    }

    /// Basis on an arbitrary interval, used for the reference element.
    pub fn on_interval(
        element: usize,
        x_left: f64,
        x_right: f64,
        scaling: OperatorScaling,
        m: usize,
    ) -> Result<Self> {
        let h = x_right - x_left;
        ensure_positive("h", h)?;
        let alpha = scaling.alpha(h);
        if alpha.abs() > MAX_ELEMENT_EXPONENT {
            return Err(VmsError::PecletOverflow(alpha.abs()));
        }
        let modes = (1..=m)
            .map(|j| eigen_mode(j, &scaling, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            element,
            x_left,
            x_right,
            scaling,
            modes,
            gauge: 1.0,
        })
    }

    pub fn with_gauge(mut self, gauge: f64) -> Result<Self> {
        ensure_positive("gauge", gauge)?;
        self.gauge = gauge;
        Ok(self)
    }

    pub fn h(&self) -> f64 {
        self.x_right - self.x_left
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn alpha(&self) -> f64 {
        self.scaling.alpha(self.h())
    }

    fn local(&self, x: f64) -> f64 {
        (x - self.x_left) / self.h()
    }

    /// `psi(x) = gauge * exp(c (x - x_L) / (2 mu))`.
    pub fn psi(&self, x: f64) -> f64 {
        self.gauge * (self.alpha() * self.local(x)).exp()
    }

    /// `p(x) = psi(x)^-2`.
    pub fn weight(&self, x: f64) -> f64 {
        let psi = self.psi(x);
        1.0 / (psi * psi)
    }

    fn check_mode(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n_modes() {
            Err(VmsError::InvalidModeIndex(j))
        } else {
            Ok(())
        }
    }

    fn sine_part(&self, j: usize, x: f64) -> f64 {
        (2.0 / self.h()).sqrt() * (j as f64 * PI * self.local(x)).sin()
    }

    /// `z_j(x)`.
    pub fn z(&self, j: usize, x: f64) -> f64 {
        self.sine_part(j, x) * self.psi(x)
    }

    /// `p(x) z_j(x)`, evaluated without forming `p`.
    pub fn pz(&self, j: usize, x: f64) -> f64 {
        self.sine_part(j, x) / self.psi(x)
    }

    /// Closed-form moments of mode `j`.
    pub fn moments(&self, j: usize) -> Result<ModeMoments> {
        self.check_mode(j)?;
        Ok(mode_moments(self.h(), self.alpha(), j, self.gauge))
    }

    pub fn weighted_inner_products(&self, side: LocalNode, j: usize) -> Result<WeightedInnerProducts> {
        let m = self.moments(j)?;
        let a = side.index();
        Ok(WeightedInnerProducts {
            phi_pz: m.p[a],
            dphi_pz: m.dp[a],
            phi_z: m.z[a],
            dphi_z: m.dz[a],
        })
    }

    /// `(f, p z_j)` for `f` affine on the element with end values `traces`.
    pub fn source_inner_product(&self, j: usize, traces: [f64; 2]) -> Result<f64> {
        let m = self.moments(j)?;
        Ok(traces[0] * m.p[0] + traces[1] * m.p[1])
    }
}
