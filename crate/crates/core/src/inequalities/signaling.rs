use crate::error::{Error, Result};
use crate::linalg::{born_probability, luders_update, DensityMatrix};
use crate::rays::Ray;

fn check(rho: &DensityMatrix, i: &Ray, j: &Ray) -> Result<()> {
    for r in [i, j] {
        if r.dim() != rho.dim() {
            return Err(Error::DimensionMismatch {
                expected: rho.dim(),
                found: r.dim(),
            });
        }
    }
    Ok(())
}

/// `Pr(1|i) * Pr_{|i>}(1|j)`: the joint probability with the second
/// measurement performed on a freshly prepared `|i>`.
pub fn reprep_joint(rho: &DensityMatrix, i: &Ray, j: &Ray) -> Result<f64> {
    check(rho, i, j)?;
    let first = born_probability(rho, &i.projector())?;
    let prepared = DensityMatrix::pure(&i.to_c64())?;
    Ok(first * born_probability(&prepared, &j.projector())?)
}

/// `Pr(1|j) - Pr(_,1|i,j)`: change of the `j` marginal caused by an earlier,
/// ignored measurement of `{P_i, I - P_i}`.
pub fn signaling_factor(rho: &DensityMatrix, i: &Ray, j: &Ray) -> Result<f64> {
    check(rho, i, j)?;
    let pj = j.projector();
    let direct = born_probability(rho, &pj)?;
    let pi = i.projector();
    let after = match pi.complement() {
        Some(rest) => luders_update(rho, &[pi, rest])?,
        None => rho.clone(),
    };
    Ok(direct - born_probability(&after, &pj)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn orthogonal_pair_neither_signals_nor_coincides() {
        let rho = DensityMatrix::pure(&[c64(0.6, 0.0), c64(0.0, 0.8)]).unwrap();
        let i = Ray::from_ints("i", &[1, 0]).unwrap();
        let j = Ray::from_ints("j", &[0, 1]).unwrap();
        assert_eq!(reprep_joint(&rho, &i, &j).unwrap(), 0.0);
        assert!(signaling_factor(&rho, &i, &j).unwrap().abs() < 1e-15);
    }

    #[test]
    fn overlapping_pair_signals() {
        // |+> measured after an ignored Z measurement loses its coherence.
        let rho = DensityMatrix::pure(&[c64(1.0, 0.0), c64(1.0, 0.0)]).unwrap();
        let i = Ray::from_ints("z", &[1, 0]).unwrap();
        let j = Ray::from_ints("plus", &[1, 1]).unwrap();
        assert!((signaling_factor(&rho, &i, &j).unwrap() - 0.5).abs() < 1e-15);
        assert!((signaling_factor(&rho, &i, &i).unwrap()).abs() < 1e-15);
    }
}
