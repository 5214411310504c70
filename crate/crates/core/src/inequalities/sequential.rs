use crate::error::{Error, Result};
use crate::linalg::{sequential_joint, ComplexMatrix, DensityMatrix, Projector};
use crate::tolerance::Tolerances;

/// Verifies that `a` is Hermitian with `a^2 = I`, i.e. spectrum in {-1, +1}.
pub fn check_dichotomic(a: &ComplexMatrix) -> Result<()> {
    let tol = Tolerances::DEFAULT;
    let d = a.dim()?;
    if a.hermiticity_defect() > tol.observable {
        return Err(Error::InvalidObservable("not Hermitian".into()));
    }
    let defect = a.matmul(a)?.max_abs_diff(&ComplexMatrix::identity(d))?;
    if defect > tol.dichotomic {
        return Err(Error::InvalidObservable(format!(
            "spectrum is not within {{-1, +1}} (defect {defect:e})"
        )));
    }
    Ok(())
}

/// Eigenprojectors `(P+, P-)` of a +-1 observable; either may be absent when
/// the observable is `+-I`.
pub fn dichotomic_projectors(a: &ComplexMatrix) -> Result<(Option<Projector>, Option<Projector>)> {
    check_dichotomic(a)?;
    let d = a.dim()?;
    let id = ComplexMatrix::identity(d);
    let plus = (&id + a).scale_real(0.5);
    let minus = (&id - a).scale_real(0.5);
    let make = |m: ComplexMatrix| -> Result<Option<Projector>> {
        if m.trace().re < 0.5 {
            Ok(None)
        } else {
            Projector::new(m).map(Some)
        }
    };
    Ok((make(plus)?, make(minus)?))
}

/// `<AB>` measured sequentially: A by Luders update, then B on each branch,
/// summing `a * b * Pr(a, b)` over the four outcome pairs.
pub fn sequential_correlation(rho: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    for m in [a, b] {
        let d = m.dim()?;
        if d != rho.dim() {
            return Err(Error::DimensionMismatch {
                expected: rho.dim(),
                found: d,
            });
        }
    }
    let (ap, am) = dichotomic_projectors(a)?;
    let (bp, bm) = dichotomic_projectors(b)?;
    let mut total = 0.0;
    for (sa, pa) in [(1.0, &ap), (-1.0, &am)] {
        let Some(pa) = pa else { continue };
        for (sb, pb) in [(1.0, &bp), (-1.0, &bm)] {
            let Some(pb) = pb else { continue };
            total += sa * sb * sequential_joint(rho, pa, pb)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c64(0.0, 0.0), c64(1.0, 0.0)], vec![c64(1.0, 0.0), c64(0.0, 0.0)]])
            .unwrap()
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[1.0, -1.0])
    }

    #[test]
    fn repeated_measurement_is_perfectly_correlated() {
        let rho = DensityMatrix::pure(&[c64(0.6, 0.0), c64(0.0, 0.8)]).unwrap();
        let v = sequential_correlation(&rho, &pauli_x(), &pauli_x()).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn incompatible_pair_decorrelates() {
        // Z then X on |0>: Z gives +1 surely, X is then unbiased.
        let rho = DensityMatrix::pure(&[c64(1.0, 0.0), c64(0.0, 0.0)]).unwrap();
        let v = sequential_correlation(&rho, &pauli_z(), &pauli_x()).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn non_dichotomic_observable_is_rejected() {
        let rho = DensityMatrix::maximally_mixed(2);
        let bad = ComplexMatrix::diagonal(&[1.0, 0.5]);
        assert!(sequential_correlation(&rho, &bad, &pauli_z()).is_err());
    }
}
