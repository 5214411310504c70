use num_complex::Complex64;

use super::{ExclusivityGraph, ThetaCertificate};
use crate::error::{Error, Result};
use crate::linalg::real::RealMatrix;
use crate::rays::{Ray, RaySet};
use crate::tolerance::Tolerances;

/// Unit vectors realizing the theta value of a graph: adjacent vertices get
/// orthogonal vectors and `sum_i |<phi_i|psi>|^2` attains theta.
#[derive(Debug, Clone)]
pub struct OrthogonalRepresentation {
    pub vectors: Vec<Vec<f64>>,
    pub handle: Vec<f64>,
    pub dimension: usize,
}

impl OrthogonalRepresentation {
    /// `sum_i |<phi_i|psi>|^2`.
    pub fn value(&self) -> f64 {
        self.vectors
            .iter()
            .map(|v| dot(v, &self.handle).powi(2))
            .sum()
    }

    /// The vectors as a floating ray set labelled by `labels`.
    pub fn rayset(&self, name: &str, labels: &[String]) -> Result<RaySet> {
        let rays = self
            .vectors
            .iter()
            .zip(labels)
            .map(|(v, l)| Ray::float(l.clone(), to_complex(v)))
            .collect::<Result<Vec<_>>>()?;
        RaySet::new(name, self.dimension, rays)
    }

    pub fn handle_ray(&self) -> Result<Ray> {
        Ray::float("psi", to_complex(&self.handle))
    }
}

fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Factors the certificate's Gram matrix by pivoted Cholesky and normalizes
/// the factor rows into an orthogonal representation.
pub fn orthogonal_representation(
    g: &ExclusivityGraph,
    cert: &ThetaCertificate,
) -> Result<OrthogonalRepresentation> {
    let n = g.n();
    if cert.gram.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cert.gram.n(),
        });
    }
    let threshold = Tolerances::DEFAULT.rank;
    let factor = pivoted_cholesky(&cert.gram, threshold)?;
    let dimension = factor.first().map_or(0, Vec::len);

    let mut vectors = Vec::with_capacity(n);
    for (i, row) in factor.iter().enumerate() {
        let len = dot(row, row).sqrt();
        if len < threshold.sqrt() {
            return Err(Error::RankExtraction(format!(
                "vertex {i} has negligible weight in the Gram matrix"
            )));
        }
        vectors.push(row.iter().map(|x| x / len).collect::<Vec<f64>>());
    }
    let mut sum = vec![0.0; dimension];
    for row in &factor {
        for (s, x) in sum.iter_mut().zip(row) {
            *s += x;
        }
    }
    let len = dot(&sum, &sum).sqrt();
    if len == 0.0 {
        return Err(Error::RankExtraction("handle vector vanishes".into()));
    }
    let handle: Vec<f64> = sum.iter().map(|x| x / len).collect();

    for (u, v) in g.edges() {
        let ov = dot(&vectors[u], &vectors[v]).abs();
        if ov > 1e-5 {
            return Err(Error::RankExtraction(format!(
                "adjacent vertices {u} and {v} overlap by {ov:e}"
            )));
        }
    }
    let rep = OrthogonalRepresentation {
        vectors,
        handle,
        dimension,
    };
    if rep.value() < cert.theta - 1e-4 {
        return Err(Error::RankExtraction(format!(
            "representation attains {} below theta {}",
            rep.value(),
            cert.theta
        )));
    }
    Ok(rep)
}

/// Extends a representation of the first `rep.vectors.len()` vertices of `g`
/// to all of `g` without raising the dimension.
///
/// Each further vertex, in index order, receives the unit vector orthogonal
/// to its already-placed neighbours, taken as the normalized projection of
/// the standard basis vector with the largest component outside their span.
/// The handle is kept.
pub fn extend_representation(
    g: &ExclusivityGraph,
    rep: &OrthogonalRepresentation,
) -> Result<OrthogonalRepresentation> {
    let known = rep.vectors.len();
    if known > g.n() {
        return Err(Error::SizeMismatch(g.n(), known));
    }
    let d = rep.dimension;
    let mut vectors = rep.vectors.clone();
    for v in known..g.n() {
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for u in g.neighbors(v).into_iter().filter(|&u| u < v) {
            let mut w = vectors[u].clone();
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
            let len = dot(&w, &w).sqrt();
            if len > 1e-8 {
                basis.push(w.into_iter().map(|x| x / len).collect());
            }
        }
        let candidate = (0..d)
            .map(|k| {
                let mut w = vec![0.0; d];
                w[k] = 1.0;
                for b in &basis {
                    let c = dot(&w, b);
                    w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
                w
            })
            .max_by(|a, b| dot(a, a).total_cmp(&dot(b, b)))
            .unwrap_or_default();
        let len = dot(&candidate, &candidate).sqrt();
        if len < 1e-8 {
            return Err(Error::RankExtraction(format!(
                "neighbours of vertex {v} already span dimension {d}"
            )));
        }
        vectors.push(candidate.into_iter().map(|x| x / len).collect());
    }
    for (u, v) in g.edges() {
        let ov = dot(&vectors[u], &vectors[v]).abs();
        if ov > 1e-5 {
            return Err(Error::RankExtraction(format!(
                "adjacent vertices {u} and {v} overlap by {ov:e}"
            )));
        }
    }
    Ok(OrthogonalRepresentation {
        vectors,
        handle: rep.handle.clone(),
        dimension: d,
    })
}

/// Rows `u_i` with `X ~ U U^T`, keeping pivots above `threshold`.
fn pivoted_cholesky(x: &RealMatrix, threshold: f64) -> Result<Vec<Vec<f64>>> {
    let n = x.n();
    let mut residual_diag: Vec<f64> = (0..n).map(|i| x[(i, i)]).collect();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut used = vec![false; n];
    loop {
        let pick = (0..n)
            .filter(|&i| !used[i])
            .max_by(|&a, &b| residual_diag[a].total_cmp(&residual_diag[b]).then(b.cmp(&a)));
        let Some(p) = pick else { break };
        let pivot = residual_diag[p];
        if pivot < threshold {
            if pivot > threshold * 1e-2 {
                return Err(Error::RankExtraction(format!(
                    "no spectral gap at the rank threshold (pivot {pivot:e})"
                )));
            }
            break;
        }
        used[p] = true;
        let root = pivot.sqrt();
        let col: Vec<f64> = (0..n)
            .map(|i| {
                let prev: f64 = cols.iter().map(|c| c[i] * c[p]).sum();
                (x[(i, p)] - prev) / root
            })
            .collect();
        for i in 0..n {
            residual_diag[i] -= col[i] * col[i];
        }
        cols.push(col);
    }
    Ok((0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, icosahedron, icosahedron_with_auxiliary, lovasz_theta};

    #[test]
    fn pentagon_representation_is_three_dimensional() {
        let g = cycle(5);
        let cert = lovasz_theta(&g, 1e-9).unwrap();
        let rep = orthogonal_representation(&g, &cert).unwrap();
        assert_eq!(rep.dimension, 3);
        assert!((rep.value() - 5f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn icosahedron_representation_is_four_dimensional() {
        let g = icosahedron();
        let cert = lovasz_theta(&g, 1e-9).unwrap();
        let rep = orthogonal_representation(&g, &cert).unwrap();
        assert_eq!(rep.dimension, 4);
    }

    #[test]
    fn auxiliary_vertices_complete_bases_in_dimension_four() {
        let base = icosahedron();
        let rep = orthogonal_representation(&base, &lovasz_theta(&base, 1e-9).unwrap()).unwrap();
        let full = extend_representation(&icosahedron_with_auxiliary(), &rep).unwrap();
        assert_eq!(full.dimension, 4);
        assert_eq!(full.vectors.len(), 16);
        assert!(full.value() <= 4.0 + 1e-9);
    }

    #[test]
    fn two_clique_is_two_orthogonal_vectors() {
        let g = complete(2);
        let rep = orthogonal_representation(&g, &lovasz_theta(&g, 1e-9).unwrap()).unwrap();
        assert_eq!(rep.dimension, 2);
        assert!(dot(&rep.vectors[0], &rep.vectors[1]).abs() < 1e-5);
    }
}
