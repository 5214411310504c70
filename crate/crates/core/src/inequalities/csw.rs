use crate::error::{Error, Result};
use crate::graph::ExclusivityGraph;
use crate::linalg::{born_probability, sequential_joint, DensityMatrix};
use crate::rays::RaySet;

/// `sum_k Pr(1|k) - sum_{(i,j) in E} Pr(1,1|i,j)`, joints measured
/// sequentially in the order `i` then `j`.
pub fn csw_value(rs: &RaySet, g: &ExclusivityGraph, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != rs.dim() {
        return Err(Error::DimensionMismatch {
            expected: rs.dim(),
            found: rho.dim(),
        });
    }
    if g.n() != rs.len() {
        return Err(Error::DimensionMismatch {
            expected: rs.len(),
            found: g.n(),
        });
    }
    let projectors = rs.projectors();
    let mut value = 0.0;
    for p in &projectors {
        value += born_probability(rho, p)?;
    }
    for (i, j) in g.edges() {
        value -= sequential_joint(rho, &projectors[i], &projectors[j])?;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use crate::rays::{builtin_rayset, exclusivity_graph};

    #[test]
    fn state_orthogonal_to_every_ray_scores_zero() {
        let rs = crate::rays::parse_rayset("t", "dim 3\n(1,0,0)\n(0,1,0)\n(1,1,0)\n").unwrap();
        let g = exclusivity_graph(&rs, 0.0).unwrap();
        let rho = DensityMatrix::pure(&[c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)]).unwrap();
        assert!(csw_value(&rs, &g, &rho).unwrap().abs() < 1e-15);
    }

    #[test]
    fn pentagon_with_mixed_state() {
        let rs = builtin_rayset("kcbs5").unwrap();
        let g = exclusivity_graph(&rs, 0.0).unwrap();
        let v = csw_value(&rs, &g, &DensityMatrix::maximally_mixed(3)).unwrap();
        assert!((v - 5.0 / 3.0).abs() < 1e-12);
    }
}
