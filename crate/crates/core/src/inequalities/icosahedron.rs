use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{icosahedron, lovasz_theta, orthogonal_representation, ExclusivityGraph};
use crate::linalg::{eigh, inner, ComplexMatrix, DensityMatrix};
use crate::rays::{Ray, RaySet};

use super::csw::csw_value;

/// The icosahedron inequality realized by an optimal orthogonal representation.
#[derive(Debug, Clone)]
pub struct IcosahedronInequality {
    graph: ExclusivityGraph,
    rays: RaySet,
    handle: Vec<Complex64>,
}

impl IcosahedronInequality {
    /// Solves for theta and extracts the four-dimensional representation.
    pub fn new() -> Result<Self> {
        Self::from_graph(icosahedron())
    }

    /// Same construction for any graph whose optimal representation lives
    /// in dimension four.
    pub fn from_graph(graph: ExclusivityGraph) -> Result<Self> {
        let cert = lovasz_theta(&graph, 1e-9)?;
        let rep = orthogonal_representation(&graph, &cert)?;
        if rep.dimension != 4 {
            return Err(Error::RankExtraction(format!(
                "expected a ququart representation, found dimension {}",
                rep.dimension
            )));
        }
        let rays = rep.rayset("icosahedron", graph.labels())?;
        let handle = rep.handle_ray()?.unit();
        Ok(Self {
            graph,
            rays,
            handle,
        })
    }

    pub fn graph(&self) -> &ExclusivityGraph {
        &self.graph
    }

    pub fn rays(&self) -> &RaySet {
        &self.rays
    }

    pub fn handle(&self) -> &[Complex64] {
        &self.handle
    }

    /// `sum_i |phi_i><phi_i|`.
    pub fn projector_sum(&self) -> ComplexMatrix {
        let mut total = ComplexMatrix::zeros(4, 4);
        for p in self.rays.projectors() {
            total = &total + p.matrix();
        }
        total
    }

    /// CSW value of `rho`; with `align` the representation is first rotated so
    /// that the handle points along the dominant eigenvector of `rho`.
    pub fn value(&self, rho: &DensityMatrix, align: bool) -> Result<f64> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: rho.dim(),
            });
        }
        if !align {
            return csw_value(&self.rays, &self.graph, rho);
        }
        let top = eigh(rho.matrix())?.vector(0);
        let u = reflection_onto(&self.handle, &top);
        let rotated = self
            .rays
            .rays()
            .iter()
            .map(|r| Ray::float(r.label(), u.apply(&r.unit()).expect("dimension 4")))
            .collect::<Result<Vec<_>>>()?;
        let rs = RaySet::new("icosahedron-aligned", 4, rotated)?;
        csw_value(&rs, &self.graph, rho)
    }
}

/// A unitary mapping the unit vector `from` onto `to` up to a global phase.
fn reflection_onto(from: &[Complex64], to: &[Complex64]) -> ComplexMatrix {
    let d = from.len();
    let ov = inner(to, from);
    // Rephase `to` so that <from|to> is real and nonnegative.
    let phase = if ov.norm() > 1e-300 { ov / ov.norm() } else { Complex64::new(1.0, 0.0) };
    let target: Vec<Complex64> = to.iter().map(|z| z * phase).collect();
    let diff: Vec<Complex64> = from.iter().zip(&target).map(|(a, b)| a - b).collect();
    let len = crate::linalg::norm(&diff);
    if len < 1e-14 {
        return ComplexMatrix::identity(d);
    }
    let w: Vec<Complex64> = diff.iter().map(|z| z / len).collect();
    &ComplexMatrix::identity(d) - &ComplexMatrix::outer(&w, &w).scale_real(2.0)
}

/// Evaluates the icosahedron inequality, building the representation afresh.
pub fn icosahedron_value(rho: &DensityMatrix, align: bool) -> Result<f64> {
    IcosahedronInequality::new()?.value(rho, align)
}

/// `4 (1 - tr rho^2) / 3`, clamped into `[0, 1]`.
pub fn linear_entropy(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok((4.0 * (1.0 - rho.purity()) / 3.0).clamp(0.0, 1.0))
}

/// `3 + (3 sqrt 5 - 6) sqrt(1 - l)`.
pub fn purity_bound(linear_entropy: f64) -> f64 {
    3.0 + (3.0 * 5f64.sqrt() - 6.0) * (1.0 - linear_entropy).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn mixed_state_scores_three() {
        let ineq = IcosahedronInequality::new().unwrap();
        let v = ineq.value(&DensityMatrix::maximally_mixed(4), false).unwrap();
        assert!((v - 3.0).abs() < 1e-6);
    }

    #[test]
    fn aligned_basis_state_reaches_theta() {
        let ineq = IcosahedronInequality::new().unwrap();
        let rho = DensityMatrix::pure(&[c64(0.0, 0.0), c64(0.0, 1.0), c64(0.0, 0.0), c64(0.0, 0.0)])
            .unwrap();
        let v = ineq.value(&rho, true).unwrap();
        assert!((v - 3.0 * (5f64.sqrt() - 1.0)).abs() < 1e-6);
    }

    #[test]
    fn linear_entropy_examples() {
        let pure = DensityMatrix::pure(&[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)])
            .unwrap();
        assert!(linear_entropy(&pure).unwrap().abs() < 1e-15);
        assert!((linear_entropy(&DensityMatrix::maximally_mixed(4)).unwrap() - 1.0).abs() < 1e-15);
        let half = DensityMatrix::new(ComplexMatrix::diagonal(&[0.5, 0.5, 0.0, 0.0])).unwrap();
        assert!((linear_entropy(&half).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(linear_entropy(&DensityMatrix::maximally_mixed(3)).is_err());
    }
}
