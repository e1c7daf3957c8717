//! Uniform 1D mesh on [0, 1], P1 Galerkin matrices and load vectors.
//!
//! All global operators act on the interior nodes only; homogeneous Dirichlet
//! rows are eliminated, so a mesh with `n` elements yields systems of dimension `n - 1`.

use crate::error::{Result, VmsError};
use crate::tridiag::TridiagonalMatrix;

/// Element-local 2x2 matrix, indexed `[test][trial]` (row = test function).
pub type LocalMatrix = [[f64; 2]; 2];

/// Values of an element-wise affine field at the left and right end of each element.
pub type ElementTraces = Vec<[f64; 2]>;

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    n_elements: usize,
    h: f64,
    nodes: Vec<f64>,
}

impl Mesh1D {
    pub fn new(n_elements: usize) -> Result<Self> {
        if n_elements < 2 {
            return Err(VmsError::TooFewElements(n_elements));
        }
        let h = 1.0 / n_elements as f64;
        let nodes = (0..=n_elements)
            .map(|i| i as f64 / n_elements as f64)
            .collect();
        Ok(Self {
            n_elements,
            h,
            nodes,
        })
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn n_nodes(&self) -> usize {
        self.n_elements + 1
    }

    /// Dimension of the interior-node system.
    pub fn n_interior(&self) -> usize {
        self.n_elements - 1
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// End points of element `e`.
    pub fn element(&self, e: usize) -> (f64, f64) {
        (self.nodes[e], self.nodes[e + 1])
    }

    /// Element containing `x`, with the right end point assigned to the last element.
    pub fn locate(&self, x: f64) -> usize {
        ((x / self.h).floor().max(0.0) as usize).min(self.n_elements - 1)
    }

    /// Evaluates the P1 field with nodal values `values` at `x`.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        let e = self.locate(x);
        let s = (x - self.nodes[e]) / self.h;
        values[e] * (1.0 - s) + values[e + 1] * s
    }

    /// Element traces of a nodal P1 field.
    pub fn traces(&self, values: &[f64]) -> ElementTraces {
        values.windows(2).map(|w| [w[0], w[1]]).collect()
    }

    /// Nodal values of `f`.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }

    /// Full nodal vector from interior values and boundary data.
    pub fn with_boundary(&self, interior: &[f64], left: f64, right: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_nodes());
        out.push(left);
        out.extend_from_slice(interior);
        out.push(right);
        out
    }
}

/// Builds the uniform mesh with `n_elements` elements.
pub fn build_mesh(n_elements: usize) -> Result<Mesh1D> {
    Mesh1D::new(n_elements)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinMatrices {
    pub mass: TridiagonalMatrix,
    pub convection: TridiagonalMatrix,
    pub stiffness: TridiagonalMatrix,
}

pub fn local_mass(h: f64) -> LocalMatrix {
    [[h / 3.0, h / 6.0], [h / 6.0, h / 3.0]]
}

pub fn local_stiffness(h: f64) -> LocalMatrix {
    [[1.0 / h, -1.0 / h], [-1.0 / h, 1.0 / h]]
}

/// Entry `[a][b] = (phi_b', phi_a)` on one element.
pub fn local_convection() -> LocalMatrix {
    [[-0.5, 0.5], [-0.5, 0.5]]
}

pub fn transpose_local(m: &LocalMatrix) -> LocalMatrix {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

/// Sums one element matrix over every element and restricts to interior nodes.
pub fn assemble_uniform(mesh: &Mesh1D, local: &LocalMatrix) -> TridiagonalMatrix {
    let dim = mesh.n_interior();
    let mut out = TridiagonalMatrix::zeros(dim);
    // Interior node i (global node i + 1) touches elements i (as right node) and i + 1 (as left node).
    for d in out.diag.iter_mut() {
        *d = local[1][1] + local[0][0];
    }
    for s in out.sub.iter_mut() {
        *s = local[1][0];
    }
    for s in out.sup.iter_mut() {
        *s = local[0][1];
    }
    out
}

pub fn assemble_galerkin(mesh: &Mesh1D) -> GalerkinMatrices {
    let h = mesh.h();
    GalerkinMatrices {
        mass: assemble_uniform(mesh, &local_mass(h)),
        convection: assemble_uniform(mesh, &local_convection()),
        stiffness: assemble_uniform(mesh, &local_stiffness(h)),
    }
}

/// Adds per-element local vectors into an interior-node vector.
pub fn assemble_vector(mesh: &Mesh1D, local: &[[f64; 2]]) -> Vec<f64> {
    assert_eq!(local.len(), mesh.n_elements());
    let mut out = vec![0.0; mesh.n_interior()];
    for (e, v) in local.iter().enumerate() {
        if e >= 1 {
            out[e - 1] += v[0];
        }
        if e + 1 < mesh.n_elements() {
            out[e] += v[1];
        }
    }
    out
}

/// `(f, phi_a)` on one element for `f` affine with end values `tr`.
pub fn local_load(h: f64, tr: [f64; 2]) -> [f64; 2] {
    [h / 6.0 * (2.0 * tr[0] + tr[1]), h / 6.0 * (tr[0] + 2.0 * tr[1])]
}

/// `(f, phi_a')` on one element for `f` affine with end values `tr`.
pub fn local_derivative_load(tr: [f64; 2]) -> [f64; 2] {
    let mean = 0.5 * (tr[0] + tr[1]);
    [-mean, mean]
}

/// Exact load vector `(f, phi_l)` for an element-wise affine `f`.
pub fn galerkin_load(mesh: &Mesh1D, traces: &[[f64; 2]]) -> Vec<f64> {
    let h = mesh.h();
    let local: Vec<[f64; 2]> = traces.iter().map(|&t| local_load(h, t)).collect();
    assemble_vector(mesh, &local)
}

/// Load vector for the source `f(x) = -gamma x - c`: entry `-h (gamma x_l + c)`.
pub fn galerkin_load_stationary(mesh: &Mesh1D, gamma: f64, c: f64) -> Vec<f64> {
    let h = mesh.h();
    mesh.nodes()[1..mesh.n_elements()]
        .iter()
        .map(|&x| -h * (gamma * x + c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_construction() {
        let m = build_mesh(2).unwrap();
        assert_eq!(m.nodes(), &[0.0, 0.5, 1.0]);
        assert_eq!(m.h(), 0.5);
        assert_eq!(build_mesh(40).unwrap().h(), 0.025);
        assert_eq!(build_mesh(50).unwrap().h(), 0.02);
        assert_eq!(build_mesh(1), Err(VmsError::TooFewElements(1)));
        assert_eq!(build_mesh(0), Err(VmsError::TooFewElements(0)));
    }

    #[test]
    fn nodes_uniform() {
        for n in [2, 3, 7, 40, 160, 1000] {
            let m = build_mesh(n).unwrap();
            for w in m.nodes().windows(2) {
                assert!((w[1] - w[0] - m.h()).abs() <= 1e-14);
            }
            assert_eq!(*m.nodes().last().unwrap(), 1.0);
        }
    }

    #[test]
    fn galerkin_entries() {
        let g = assemble_galerkin(&build_mesh(4).unwrap());
        let h = 0.25;
        assert!((g.mass.diag[0] - 2.0 * h / 3.0).abs() < 1e-15);
        assert!((g.mass.sub[0] - h / 6.0).abs() < 1e-15);
        assert!((g.stiffness.diag[1] - 2.0 / h).abs() < 1e-12);
        assert!((g.stiffness.sup[1] + 1.0 / h).abs() < 1e-12);
        assert_eq!(g.convection.diag, vec![0.0; 3]);
        assert_eq!(g.convection.sub, vec![-0.5; 2]);
        assert_eq!(g.convection.sup, vec![0.5; 2]);
    }

    #[test]
    fn half_width_mesh_entries() {
        // n = 2 has a single interior node: only the diagonal is present.
        let g = assemble_galerkin(&build_mesh(2).unwrap());
        assert!((g.mass.diag[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((g.stiffness.diag[0] - 4.0).abs() < 1e-15);
        let g3 = assemble_galerkin(&build_mesh(3).unwrap());
        let h = 1.0 / 3.0;
        assert!((g3.mass.sup[0] - h / 6.0).abs() < 1e-15);
        // Off-diagonal mass entry for h = 0.5 would be 1/12.
        assert!((local_mass(0.5)[0][1] - 1.0 / 12.0).abs() < 1e-15);
        assert!((local_stiffness(0.5)[0][1] + 2.0).abs() < 1e-15);
    }

    #[test]
    fn symmetry_and_antisymmetry() {
        let g = assemble_galerkin(&build_mesh(17).unwrap());
        for i in 0..g.mass.sub.len() {
            assert!((g.mass.sub[i] - g.mass.sup[i]).abs() <= 1e-14);
            assert!((g.stiffness.sub[i] - g.stiffness.sup[i]).abs() <= 1e-14);
            assert!((g.convection.sub[i] + g.convection.sup[i]).abs() <= 1e-14);
        }
    }

    #[test]
    fn stationary_load_examples() {
        let m = build_mesh(40).unwrap();
        let b = galerkin_load_stationary(&m, 0.0, 1.0);
        assert!(b.iter().all(|v| (v + m.h()).abs() < 1e-15));
        // Interior node 20 (global node 20) sits at x = 0.5.
        let b = galerkin_load_stationary(&m, 1.0, 0.0);
        assert!((b[19] + 0.0125).abs() < 1e-15);
        let b = galerkin_load_stationary(&m, 1000.0, 1.0);
        assert!((b[19] + 12.525).abs() < 1e-12);
    }

    #[test]
    fn stationary_load_matches_affine_load() {
        let m = build_mesh(13).unwrap();
        let (g, c) = (3.5, -2.0);
        let f = m.sample(|x| -g * x - c);
        let a = galerkin_load(&m, &m.traces(&f));
        let b = galerkin_load_stationary(&m, g, c);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn poisson_nodal_exactness() {
        let mu = 2.5;
        let m = build_mesh(16).unwrap();
        let g = assemble_galerkin(&m);
        let a = g.stiffness.scaled(mu);
        let rhs = galerkin_load(&m, &vec![[1.0, 1.0]; m.n_elements()]);
        let u = a.solve(&rhs).unwrap();
        for (i, ui) in u.iter().enumerate() {
            let x = m.nodes()[i + 1];
            assert!((ui - x * (1.0 - x) / (2.0 * mu)).abs() < 1e-10);
        }
    }

    #[test]
    fn interpolation_reproduces_affine() {
        let m = build_mesh(5).unwrap();
        let v = m.sample(|x| 2.0 * x - 1.0);
        for x in [0.0, 0.13, 0.5, 0.99, 1.0] {
            assert!((m.interpolate(&v, x) - (2.0 * x - 1.0)).abs() < 1e-14);
        }
    }
}
