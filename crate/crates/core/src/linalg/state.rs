use num_complex::Complex64;

use super::eigen::eigh;
use super::matrix::{normalized, ComplexMatrix};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `m` against the default tolerances.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(m: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        m.dim()?;
        let defect = m.hermiticity_defect();
        if defect > tol.hermitian {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace is {tr}")));
        }
        let m = m.hermitian_part();
        let min = eigh(&m)?.values.last().copied().unwrap_or(0.0);
        if min < -tol.psd {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self { matrix: m })
    }

    /// `|psi><psi|` for the normalized amplitude vector.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let psi = normalized(amplitudes).ok_or(Error::ZeroVector)?;
        Ok(Self {
            matrix: ComplexMatrix::outer(&psi, &psi),
        })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
        }
    }

    /// Convex mixture `sum_k w_k rho_k` with nonnegative weights summing to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let d = first.1.dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for (w, rho) in parts {
            if *w < 0.0 {
                return Err(Error::InvalidArgument("negative mixture weight".into()));
            }
            acc = acc.checked_add(&rho.matrix.scale_real(*w))?;
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix
            .trace_product(&self.matrix)
            .map(|z| z.re)
            .unwrap_or(0.0)
    }

    /// `U rho U^dagger`.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        if !u.is_unitary(1e-10) {
            return Err(Error::NotUnitary);
        }
        let m = self.matrix.conjugate_by(u)?;
        Ok(Self {
            matrix: m.hermitian_part(),
        })
    }

    /// Traces out the second factor of a `d_a x d_b` bipartite state.
    pub fn partial_trace_second(&self, d_a: usize, d_b: usize) -> Result<Self> {
        if d_a * d_b != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: d_a * d_b,
                found: self.dim(),
            });
        }
        let m = ComplexMatrix::from_fn(d_a, d_a, |i, j| {
            (0..d_b)
                .map(|k| self.matrix[(i * d_b + k, j * d_b + k)])
                .sum()
        });
        Ok(Self { matrix: m })
    }

    /// Wraps a matrix already known to be a valid state, only symmetrizing it.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        Self {
            matrix: m.hermitian_part(),
        }
    }
}

/// Hermitian idempotent matrix of positive integer rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: ComplexMatrix,
    rank: usize,
}

impl Projector {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        let d = m.dim()?;
        if m.hermiticity_defect() > tol.projector {
            return Err(Error::InvalidProjector("not Hermitian".into()));
        }
        let sq = m.matmul(&m)?;
        let defect = sq.max_abs_diff(&m)?;
        if defect > tol.projector {
            return Err(Error::InvalidProjector(format!(
                "not idempotent (defect {defect:e})"
            )));
        }
        let tr = m.trace().re;
        let rank = tr.round();
        if (tr - rank).abs() > tol.projector * d as f64 || rank < 1.0 {
            return Err(Error::InvalidProjector(format!("trace {tr} is not a positive rank")));
        }
        Ok(Self {
            matrix: m.hermitian_part(),
            rank: rank as usize,
        })
    }

    /// Rank-one projector onto the span of `v`.
    pub fn rank_one(v: &[Complex64]) -> Result<Self> {
        let u = normalized(v).ok_or(Error::ZeroVector)?;
        Ok(Self {
            matrix: ComplexMatrix::outer(&u, &u),
            rank: 1,
        })
    }

    /// `I - P`, or `None` when `P` is the identity.
    pub fn complement(&self) -> Option<Self> {
        let d = self.dim();
        if self.rank == d {
            return None;
        }
        Some(Self {
            matrix: &ComplexMatrix::identity(d) - &self.matrix,
            rank: d - self.rank,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Embeds `P` as `P (x) I_d` or `I_d (x) P`.
    pub fn tensor_identity(&self, d: usize, first: bool) -> Self {
        let id = ComplexMatrix::identity(d);
        let matrix = if first {
            self.matrix.kron(&id)
        } else {
            id.kron(&self.matrix)
        };
        Self {
            matrix,
            rank: self.rank * d,
        }
    }
}

fn check_dims(rho: &DensityMatrix, p: &Projector) -> Result<()> {
    if rho.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: p.dim(),
        });
    }
    Ok(())
}

/// `tr(rho P)`, clamped into `[0, 1]`.
pub fn born_probability(rho: &DensityMatrix, p: &Projector) -> Result<f64> {
    check_dims(rho, p)?;
    let v = rho.matrix.trace_product(&p.matrix)?.re;
    Ok(v.clamp(0.0, 1.0))
}

/// Non-selective Luders update `sum_k P_k rho P_k` for a complete orthogonal family.
pub fn luders_update(rho: &DensityMatrix, family: &[Projector]) -> Result<DensityMatrix> {
    let tol = Tolerances::DEFAULT;
    let d = rho.dim();
    let mut total = ComplexMatrix::zeros(d, d);
    for (i, p) in family.iter().enumerate() {
        check_dims(rho, p)?;
        for q in &family[i + 1..] {
            let overlap = p.matrix.matmul(&q.matrix)?.max_abs();
            if overlap > tol.projector {
                return Err(Error::InvalidProjector(format!(
                    "family members are not orthogonal (overlap {overlap:e})"
                )));
            }
        }
        total = total.checked_add(&p.matrix)?;
    }
    let defect = total.max_abs_diff(&ComplexMatrix::identity(d))?;
    if defect > tol.projector {
        return Err(Error::InvalidProjector(format!(
            "family is not complete (defect {defect:e})"
        )));
    }
    let mut out = ComplexMatrix::zeros(d, d);
    for p in family {
        let term = p.matrix.matmul(&rho.matrix)?.matmul(&p.matrix)?;
        out = out.checked_add(&term)?;
    }
    Ok(DensityMatrix::from_trusted(out))
}

/// Post-measurement state `P rho P / tr(rho P)` and the outcome probability.
pub fn conditional_state(rho: &DensityMatrix, p: &Projector) -> Result<(DensityMatrix, f64)> {
    check_dims(rho, p)?;
    let prob = rho.matrix.trace_product(&p.matrix)?.re;
    if prob < Tolerances::DEFAULT.null_event {
        return Err(Error::NullEvent);
    }
    let m = p
        .matrix
        .matmul(&rho.matrix)?
        .matmul(&p.matrix)?
        .scale_real(1.0 / prob);
    Ok((DensityMatrix::from_trusted(m), prob.min(1.0)))
}

/// Probability that `first` and then `second` both click: `tr(Q P rho P)`.
pub fn sequential_joint(rho: &DensityMatrix, first: &Projector, second: &Projector) -> Result<f64> {
    check_dims(rho, first)?;
    check_dims(rho, second)?;
    let prp = first.matrix.matmul(&rho.matrix)?.matmul(&first.matrix)?;
    Ok(second.matrix.trace_product(&prp)?.re.clamp(0.0, 1.0))
}

/// `tr(rho O)` for a Hermitian observable.
pub fn expectation(rho: &DensityMatrix, o: &ComplexMatrix) -> Result<f64> {
    let d = o.dim()?;
    if d != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: d,
        });
    }
    let scale = o.max_abs().max(1.0);
    if o.hermiticity_defect() > Tolerances::DEFAULT.observable * scale {
        return Err(Error::InvalidObservable("not Hermitian".into()));
    }
    Ok(rho.matrix.trace_product(o)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn plus_state_measured_in_z_basis() {
        let plus = DensityMatrix::pure(&[c(1.0), c(1.0)]).unwrap();
        let p0 = Projector::rank_one(&[c(1.0), c(0.0)]).unwrap();
        assert!((born_probability(&plus, &p0).unwrap() - 0.5).abs() < 1e-15);
        let p1 = p0.complement().unwrap();
        let after = luders_update(&plus, &[p0, p1]).unwrap();
        let expected = ComplexMatrix::diagonal(&[0.5, 0.5]);
        assert!(after.matrix().max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn conditional_state_on_null_event_fails() {
        let zero = DensityMatrix::pure(&[c(1.0), c(0.0)]).unwrap();
        let p1 = Projector::rank_one(&[c(0.0), c(1.0)]).unwrap();
        assert_eq!(conditional_state(&zero, &p1).unwrap_err(), Error::NullEvent);
    }

    #[test]
    fn incomplete_family_is_rejected() {
        let rho = DensityMatrix::maximally_mixed(3);
        let p = Projector::rank_one(&[c(1.0), c(0.0), c(0.0)]).unwrap();
        assert!(luders_update(&rho, &[p]).is_err());
    }

    #[test]
    fn invalid_states_are_rejected() {
        let not_unit = ComplexMatrix::diagonal(&[0.5, 0.6]);
        assert!(DensityMatrix::new(not_unit).is_err());
        let negative = ComplexMatrix::diagonal(&[1.5, -0.5]);
        assert!(DensityMatrix::new(negative).is_err());
    }

    #[test]
    fn projector_rank_from_trace() {
        let p = Projector::new(ComplexMatrix::diagonal(&[1.0, 1.0, 0.0])).unwrap();
        assert_eq!(p.rank(), 2);
        assert!(Projector::new(ComplexMatrix::diagonal(&[0.5, 0.0])).is_err());
        assert!(Projector::new(ComplexMatrix::zeros(2, 2)).is_err());
    }
}
