use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{born_probability, DensityMatrix, Projector};

/// Qutrit vectors of the distant-measurement inequality. Both parties use the
/// same `|f>`; Alice's test vectors are `|a0>` and `|a1>`.
#[derive(Debug, Clone)]
pub struct ClfcSetting {
    pub f: [f64; 3],
    pub a0: [f64; 3],
    pub a1: [f64; 3],
}

impl Default for ClfcSetting {
    fn default() -> Self {
        let s3 = 3f64.sqrt();
        let s2 = 2f64.sqrt();
        Self {
            f: [1.0 / s3, -1.0 / s3, 1.0 / s3],
            a0: [0.0, 1.0 / s2, -1.0 / s2],
            a1: [1.0 / s2, -1.0 / s2, 0.0],
        }
    }
}

fn projector(v: &[f64; 3]) -> Projector {
    let c: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    Projector::rank_one(&c).expect("nonzero vector")
}

fn joint(a: &Projector, b: &Projector) -> Projector {
    let m = a.matrix().kron(b.matrix());
    Projector::new(m).expect("tensor product of projectors")
}

impl ClfcSetting {
    /// `Pr(D1A=1|D0B=1) - Pr(T0A=a0|D0B=1) - Pr(T1A=a1|D0B=1)` on a two-qutrit
    /// state ordered Alice (x) Bob.
    pub fn value(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != 9 {
            return Err(Error::DimensionMismatch {
                expected: 9,
                found: rho.dim(),
            });
        }
        let f = projector(&self.f);
        let heralded = born_probability(rho, &f.tensor_identity(3, false))?;
        if heralded < crate::Tolerances::DEFAULT.null_event {
            return Err(Error::NullEvent);
        }
        let conditional = |alice: &Projector| -> Result<f64> {
            Ok(born_probability(rho, &joint(alice, &f))? / heralded)
        };
        Ok(conditional(&f)? - conditional(&projector(&self.a0))? - conditional(&projector(&self.a1))?)
    }
}

pub fn clfc_value(rho: &DensityMatrix) -> Result<f64> {
    ClfcSetting::default().value(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn entangled_state_gives_one_ninth() {
        let s = 1.0 / 3f64.sqrt();
        let mut psi = vec![c64(0.0, 0.0); 9];
        psi[0] = c64(s, 0.0);
        psi[4] = c64(-s, 0.0);
        psi[8] = c64(s, 0.0);
        let v = clfc_value(&DensityMatrix::pure(&psi).unwrap()).unwrap();
        assert!((v - 1.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_state_gives_minus_one_third() {
        let v = clfc_value(&DensityMatrix::maximally_mixed(9)).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unheralded_state_is_a_null_event() {
        // Bob in a state orthogonal to |f>.
        let mut psi = vec![c64(0.0, 0.0); 9];
        psi[0] = c64(1.0, 0.0);
        psi[1] = c64(1.0, 0.0);
        assert_eq!(clfc_value(&DensityMatrix::pure(&psi).unwrap()).unwrap_err(), Error::NullEvent);
    }
}
