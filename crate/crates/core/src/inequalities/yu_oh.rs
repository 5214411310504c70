use crate::error::{Error, Result};
use crate::graph::ExclusivityGraph;
use crate::linalg::{expectation, ComplexMatrix, DensityMatrix};
use crate::rays::{builtin_rayset, exclusivity_graph, RaySet};

use super::sequential::sequential_correlation;

const H: std::ops::Range<usize> = 0..4;
const Y: std::ops::Range<usize> = 4..10;

/// Terms of the Yu-Oh expression: single expectations and ordered pairs,
/// each with its coefficient.
#[derive(Debug, Clone)]
pub struct YuOhTerms {
    pub rays: RaySet,
    pub graph: ExclusivityGraph,
    pub singles: Vec<(usize, f64)>,
    pub pairs: Vec<(usize, usize, f64)>,
}

impl YuOhTerms {
    pub fn new() -> Result<Self> {
        Self::from_rays(builtin_rayset("yu_oh13")?)
    }

    /// Builds the expression for 13 qutrit rays ordered h0..h3, y-, y+, z.
    pub fn from_rays(rays: RaySet) -> Result<Self> {
        if rays.len() != 13 || rays.dim() != 3 {
            return Err(Error::InvalidArgument(
                "Yu-Oh expression needs 13 qutrit rays".into(),
            ));
        }
        let graph = exclusivity_graph(&rays, 0.0)?;
        let mut singles = Vec::new();
        let mut pairs = Vec::new();
        for i in H {
            singles.push((i, 0.5));
            for j in Y {
                if graph.has_edge(i, j) {
                    pairs.push((i, j, -0.5));
                }
            }
        }
        for m in 4..13 {
            singles.push((m, 1.0));
            for n in m + 1..13 {
                if graph.has_edge(m, n) {
                    pairs.push((m, n, -1.0));
                }
            }
        }
        Ok(Self {
            rays,
            graph,
            singles,
            pairs,
        })
    }

    /// `A_k = I - 2 |a_k><a_k|`.
    pub fn observable(&self, k: usize) -> ComplexMatrix {
        let p = self.rays.rays()[k].projector();
        &ComplexMatrix::identity(3) - &p.matrix().scale_real(2.0)
    }

    /// The expression as an operator, pairs entering as symmetrized products.
    pub fn operator(&self) -> ComplexMatrix {
        let obs: Vec<ComplexMatrix> = (0..13).map(|k| self.observable(k)).collect();
        let mut total = ComplexMatrix::zeros(3, 3);
        for &(k, w) in &self.singles {
            total = &total + &obs[k].scale_real(w);
        }
        for &(i, j, w) in &self.pairs {
            let sym = obs[i].symmetrized_product(&obs[j]).expect("qutrit operators");
            total = &total + &sym.scale_real(w);
        }
        total
    }

    /// Operational value with correlations measured sequentially.
    pub fn value(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: rho.dim(),
            });
        }
        let obs: Vec<ComplexMatrix> = (0..13).map(|k| self.observable(k)).collect();
        let mut total = 0.0;
        for &(k, w) in &self.singles {
            total += w * expectation(rho, &obs[k])?;
        }
        for &(i, j, w) in &self.pairs {
            total += w * sequential_correlation(rho, &obs[i], &obs[j])?;
        }
        Ok(total)
    }

    /// Largest value over +-1 assignments in which no two orthogonal rays
    /// both take the value -1, i.e. both projectors fire.
    pub fn nchv_bound(&self) -> f64 {
        let edges = self.graph.edges();
        // Doubled coefficients keep the arithmetic in integers.
        let singles: Vec<(usize, i64)> = self
            .singles
            .iter()
            .map(|&(k, w)| (k, (2.0 * w).round() as i64))
            .collect();
        let pairs: Vec<(usize, usize, i64)> = self
            .pairs
            .iter()
            .map(|&(i, j, w)| (i, j, (2.0 * w).round() as i64))
            .collect();
        let mut best = i64::MIN;
        for mask in 0u32..(1 << 13) {
            // Bit k set means v_k = -1.
            if edges
                .iter()
                .any(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
            {
                continue;
            }
            let v = |k: usize| if mask >> k & 1 == 1 { -1 } else { 1 };
            let mut total = 0;
            for &(k, w) in &singles {
                total += w * v(k);
            }
            for &(i, j, w) in &pairs {
                total += w * v(i) * v(j);
            }
            best = best.max(total);
        }
        best as f64 / 2.0
    }
}

/// `A_k` for the builtin Yu-Oh rays.
pub fn yu_oh_observable(k: usize) -> Result<ComplexMatrix> {
    if k >= 13 {
        return Err(Error::InvalidArgument(format!("Yu-Oh index {k}")));
    }
    Ok(YuOhTerms::new()?.observable(k))
}

pub fn yu_oh_operator() -> Result<ComplexMatrix> {
    Ok(YuOhTerms::new()?.operator())
}

pub fn yu_oh_value(rho: &DensityMatrix) -> Result<f64> {
    YuOhTerms::new()?.value(rho)
}

pub fn yu_oh_nchv_bound() -> Result<f64> {
    Ok(YuOhTerms::new()?.nchv_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn operator_is_state_independent() {
        let op = yu_oh_operator().unwrap();
        let target = ComplexMatrix::identity(3).scale_real(29.0 / 3.0);
        assert!(op.max_abs_diff(&target).unwrap() < 1e-12);
    }

    #[test]
    fn basis_state_value() {
        let z1 = DensityMatrix::pure(&[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]).unwrap();
        assert!((yu_oh_value(&z1).unwrap() - 29.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn classical_bound_is_nine() {
        assert_eq!(yu_oh_nchv_bound().unwrap(), 9.0);
    }

    #[test]
    fn term_counts() {
        let t = YuOhTerms::new().unwrap();
        assert_eq!(t.singles.len(), 13);
        // 12 h-y edges plus 12 edges among y and z rays.
        assert_eq!(t.pairs.len(), 24);
    }
}
