//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Largest dimension the Jacobi solver accepts.
pub const MAX_EIGEN_DIM: usize = 64;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition with eigenvalues in descending order and the
/// matching orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// Distinct eigenvalues with multiplicities, merging values closer than `tol`.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for &v in &self.values {
            match groups.last_mut() {
                Some((head, count)) if (*head - v).abs() <= tol => {
                    *head = (*head * *count as f64 + v) / (*count as f64 + 1.0);
                    *count += 1;
                }
                _ => groups.push((v, 1)),
            }
        }
        groups
    }
}

/// Diagonalizes a Hermitian matrix of dimension at most 64.
pub fn eigh(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = a.dim()?;
    if n > MAX_EIGEN_DIM {
        return Err(Error::BudgetExceeded {
            n,
            budget: MAX_EIGEN_DIM,
        });
    }
    let tol = Tolerances::DEFAULT;
    let scale = a.max_abs().max(1.0);
    if a.hermiticity_defect() > tol.observable * scale {
        return Err(Error::InvalidObservable("matrix is not Hermitian".into()));
    }
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = off_diagonal_norm(&m);
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > 1e-12 * scale {
        return Err(Error::NonConvergence {
            what: "Jacobi eigensolver",
            detail: format!("off-diagonal norm {:e}", off_diagonal_norm(&m)),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    let eig = HermitianEigen { values, vectors };

    let worst = max_residual(a, &eig)?;
    if worst > tol.eigen_residual * scale {
        return Err(Error::NonConvergence {
            what: "Jacobi eigensolver",
            detail: format!("eigenpair residual {worst:e}"),
        });
    }
    Ok(eig)
}

/// Eigenvalues in descending order.
pub fn hermitian_spectrum(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eigh(a)?.values)
}

/// Largest `|A v - lambda v|` over the computed eigenpairs.
pub fn max_residual(a: &ComplexMatrix, eig: &HermitianEigen) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (k, &lambda) in eig.values.iter().enumerate() {
        let v = eig.vector(k);
        let av = a.apply(&v)?;
        let r: f64 = av
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(r);
    }
    Ok(worst)
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += m[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `m[p][q]`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g < 1e-300 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Phase that makes the pivot real and positive.
    let phase = apq.conj() / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = m.rows();

    // Columns: U[:,p] = c e_p - s phase e_q, U[:,q] = s e_p + c phase e_q.
    for k in 0..n {
        let kp = m[(k, p)];
        let kq = m[(k, q)];
        m[(k, p)] = kp * c - kq * phase * s;
        m[(k, q)] = kp * s + kq * phase * c;
        let vp = v[(k, p)];
        let vq = v[(k, q)];
        v[(k, p)] = vp * c - vq * phase * s;
        v[(k, q)] = vp * s + vq * phase * c;
    }
    // Rows: multiply by U^dagger from the left.
    let pc = phase.conj();
    for k in 0..n {
        let pk = m[(p, k)];
        let qk = m[(q, k)];
        m[(p, k)] = pk * c - qk * pc * s;
        m[(q, k)] = pk * s + qk * pc * c;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_y_has_spectrum_plus_minus_one() {
        let y = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap();
        let eig = eigh(&y).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn reconstructs_a_complex_hermitian_matrix() {
        let a = ComplexMatrix::from_fn(5, 5, |r, k| {
            let x = (r * 7 + k * 3) as f64 * 0.37;
            let y = (r as f64 - k as f64) * 0.21;
            c(x.sin() + (k as f64 * 0.9 + r as f64).cos(), y)
        })
        .hermitian_part();
        let eig = eigh(&a).unwrap();
        let d = ComplexMatrix::diagonal(&eig.values);
        let back = &(&eig.vectors * &d) * &eig.vectors.adjoint();
        assert!(back.max_abs_diff(&a).unwrap() < 1e-12);
        assert!(eig.vectors.is_unitary(1e-12));
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn degenerate_values_are_grouped() {
        let a = ComplexMatrix::diagonal(&[2.0, 1.0, 2.0 + 1e-9, 1.0]);
        let groups = eigh(&a).unwrap().grouped(1e-7);
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].1, 2);
        assert_eq!(groups[1].1, 2);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let a = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        assert!(eigh(&a).is_err());
    }
}
