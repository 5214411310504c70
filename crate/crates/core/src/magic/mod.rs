//! Qutrit Weyl–Heisenberg displacements and the magic-state
//! noncontextuality witness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, eigh, expectation, Complex64, ComplexMatrix, DensityMatrix, Projector};

/// Primitive cube root of unity `e^{2 pi i / 3}`.
pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

fn omega_pow(k: u8) -> Complex64 {
    match k % 3 {
        0 => c64(1.0, 0.0),
        1 => omega(),
        _ => omega().conj(),
    }
}

/// Shift matrix: `|k> -> |k+1 mod 3>`.
pub fn shift() -> ComplexMatrix {
    ComplexMatrix::from_fn(3, 3, |r, c| if r == (c + 1) % 3 { c64(1.0, 0.0) } else { c64(0.0, 0.0) })
}

/// Clock matrix `diag(1, w, w^2)`.
pub fn clock() -> ComplexMatrix {
    ComplexMatrix::from_fn(3, 3, |r, c| if r == c { omega_pow(r as u8) } else { c64(0.0, 0.0) })
}

fn power(m: &ComplexMatrix, k: u8) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(m.rows());
    for _ in 0..k {
        acc = &acc * m;
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct QutritDisplacement {
    pub x: u8,
    pub z: u8,
    pub matrix: ComplexMatrix,
}

/// `D_{x,z} = w^{xz} tau^x sigma^z`, inputs reduced mod 3.
pub fn displacement(x: i64, z: i64) -> QutritDisplacement {
    let x = x.rem_euclid(3) as u8;
    let z = z.rem_euclid(3) as u8;
    let m = &power(&shift(), x) * &power(&clock(), z);
    QutritDisplacement {
        x,
        z,
        matrix: m.scale(omega_pow(x * z)),
    }
}

/// Displacements whose eigenbases form the four mutually unbiased bases.
pub const MUB_DISPLACEMENTS: [(u8, u8); 4] = [(0, 1), (1, 0), (1, 1), (1, 2)];
pub const A_VECTOR: [u8; 4] = [1, 0, 1, 2];
pub const B_VECTOR: [u8; 4] = [0, 2, 2, 2];

/// Eigenprojector of the `j`-th MUB displacement (`j` in `0..4`) for
/// eigenvalue `w^r`, built as `(1/3) sum_k w^{-rk} D^k`.
pub fn mub_projector(j: usize, r: i64) -> Result<Projector> {
    let &(x, z) = MUB_DISPLACEMENTS
        .get(j)
        .ok_or_else(|| Error::InvalidArgument(format!("MUB index {j} outside 0..4")))?;
    let d = displacement(x.into(), z.into()).matrix;
    let r = r.rem_euclid(3) as u8;
    let mut sum = ComplexMatrix::zeros(3, 3);
    for k in 0..3u8 {
        sum = &sum + &power(&d, k).scale(omega_pow((3 - r) * k % 3));
    }
    Projector::new(sum.scale_real(1.0 / 3.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagicWitness {
    pub x: u8,
    pub z: u8,
    pub r: [u8; 4],
    pub operator: ComplexMatrix,
}

fn r_vector(x: u8, z: u8) -> [u8; 4] {
    std::array::from_fn(|j| (x * A_VECTOR[j] + z * B_VECTOR[j]) % 3)
}

/// `A^r = I - sum_j Pi_j^{r_j}` with `r = x a + z b mod 3`.
pub fn witness_operator(x: i64, z: i64) -> MagicWitness {
    let (x, z) = (x.rem_euclid(3) as u8, z.rem_euclid(3) as u8);
    let r = r_vector(x, z);
    let mut op = ComplexMatrix::identity(3);
    for (j, &rj) in r.iter().enumerate() {
        let p = mub_projector(j, rj.into()).expect("valid index");
        op = &op - p.matrix();
    }
    MagicWitness { x, z, r, operator: op }
}

/// All nine witnesses ordered by `(x, z)` lexicographically.
pub fn witnesses() -> Vec<MagicWitness> {
    (0..3)
        .flat_map(|x| (0..3).map(move |z| witness_operator(x, z)))
        .collect()
}

fn check_qutrit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// `Tr[A^r rho]` for every witness in [`witnesses`] order.
pub fn witness_values(rho: &DensityMatrix) -> Result<Vec<f64>> {
    check_qutrit(rho)?;
    witnesses()
        .iter()
        .map(|w| expectation(rho, &w.operator))
        .collect()
}

/// Largest witness expectation and the index of the first witness
/// attaining it.
pub fn best_witness(rho: &DensityMatrix) -> Result<(usize, f64)> {
    let values = witness_values(rho)?;
    let mut best = (0, values[0]);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > best.1 {
            best = (i, v);
        }
    }
    Ok(best)
}

pub fn magic_value(rho: &DensityMatrix) -> Result<f64> {
    Ok(best_witness(rho)?.1)
}

/// Noncontextual maximum of `max_r (1 - #{j : s_j = r_j})` over outcome
/// assignments `s` to the listed bases.
///
/// With `admissible_only`, only assignments of the form `s = x a + z b`
/// (outcome lines through a common phase-space point) are allowed;
/// otherwise all `3^k` assignments are enumerated.
pub fn nchv_bound_magic_with(bases: &[usize], admissible_only: bool) -> i32 {
    let all: Vec<[u8; 4]> = witnesses().iter().map(|w| w.r).collect();
    let assignments: Vec<[u8; 4]> = if admissible_only {
        all.clone()
    } else {
        (0..81u8)
            .map(|code| std::array::from_fn(|j| code / 3u8.pow(j as u32) % 3))
            .collect()
    };
    let mut seen = std::collections::BTreeSet::new();
    assignments
        .iter()
        .filter(|s| seen.insert(bases.iter().map(|&j| s[j]).collect::<Vec<_>>()))
        .map(|s| {
            all.iter()
                .map(|r| 1 - bases.iter().filter(|&&j| s[j] == r[j]).count() as i32)
                .max()
                .expect("nine witnesses")
        })
        .max()
        .unwrap_or(1)
}

/// The noncontextual bound of the magic witness.
pub fn nchv_bound_magic() -> f64 {
    f64::from(nchv_bound_magic_with(&[0, 1, 2, 3], true))
}

/// Largest eigenvalue over all witnesses with its eigenstate.
pub fn quantum_max_magic() -> Result<(f64, DensityMatrix)> {
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for w in witnesses() {
        let e = eigh(&w.operator)?;
        if best.as_ref().is_none_or(|(v, _)| e.values[0] > *v + 1e-12) {
            best = Some((e.values[0], e.vector(0)));
        }
    }
    let (value, vector) = best.expect("nine witnesses");
    Ok((value, DensityMatrix::pure(&vector)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugationReport {
    /// `permutation[i] = k` when `U A_i U^dagger` equals witness `k`.
    pub permutation: Option<Vec<usize>>,
    pub max_matching_distance: f64,
    /// Largest change of [`magic_value`] over the samples, when permuting.
    pub max_value_change: Option<f64>,
}

impl ConjugationReport {
    pub fn permutes_witnesses(&self) -> bool {
        self.permutation.is_some()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.permutation
            .as_ref()
            .is_some_and(|p| p.iter().enumerate().any(|(i, &k)| i != k))
    }
}

/// Checks whether conjugation by `u` permutes the witness set and, if so,
/// how much [`magic_value`] moves on each sample.
pub fn unitary_conjugation_check(
    u: &ComplexMatrix,
    samples: &[DensityMatrix],
) -> Result<ConjugationReport> {
    if u.rows() != 3 || u.cols() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: u.rows(),
        });
    }
    if !u.is_unitary(1e-10) {
        return Err(Error::NotUnitary);
    }
    const MATCH_TOL: f64 = 1e-8;
    let ws = witnesses();
    let mut permutation = Vec::with_capacity(ws.len());
    let mut worst: f64 = 0.0;
    for w in &ws {
        let image = w.operator.conjugate_by(u)?;
        let (k, d) = ws
            .iter()
            .enumerate()
            .map(|(k, other)| (k, image.max_abs_diff(&other.operator).expect("3x3")))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nine witnesses");
        worst = worst.max(d);
        permutation.push(k);
    }
    let mut sorted = permutation.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if worst > MATCH_TOL || sorted.len() != ws.len() {
        return Ok(ConjugationReport {
            permutation: None,
            max_matching_distance: worst,
            max_value_change: None,
        });
    }
    let mut change: f64 = 0.0;
    for rho in samples {
        let before = magic_value(rho)?;
        let after = magic_value(&rho.conjugated(u)?)?;
        change = change.max((after - before).abs());
    }
    Ok(ConjugationReport {
        permutation: Some(permutation),
        max_matching_distance: worst,
        max_value_change: Some(change),
    })
}

/// The phase gate `diag(1, 1, w)`.
pub fn phase_gate() -> ComplexMatrix {
    ComplexMatrix::from_fn(3, 3, |r, c| match (r, c) {
        (2, 2) => omega(),
        (r, c) if r == c => c64(1.0, 0.0),
        _ => c64(0.0, 0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_commutation() {
        let (t, s) = (shift(), clock());
        let lhs = &s * &t;
        let rhs = (&t * &s).scale(omega());
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn basic_displacements() {
        assert!(displacement(0, 0).matrix.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() < 1e-15);
        assert!(displacement(0, 1).matrix.max_abs_diff(&clock()).unwrap() < 1e-15);
        assert_eq!(displacement(4, -1), displacement(1, 2));
        for x in 0..3 {
            for z in 0..3 {
                assert!(displacement(x, z).matrix.is_unitary(1e-12));
            }
        }
    }

    #[test]
    fn clock_projector_for_r_zero() {
        let p = mub_projector(0, 0).unwrap();
        let expected = ComplexMatrix::diagonal(&[1.0, 0.0, 0.0]);
        assert!(p.matrix().max_abs_diff(&expected).unwrap() < 1e-12);
        assert!(mub_projector(4, 0).is_err());
    }

    #[test]
    fn witness_traces_and_r_vectors() {
        let ws = witnesses();
        assert_eq!(ws.len(), 9);
        assert_eq!(witness_operator(1, 0).r, [1, 0, 1, 2]);
        assert_eq!(witness_operator(0, 0).r, [0, 0, 0, 0]);
        for w in &ws {
            assert!((w.operator.trace().re + 1.0).abs() < 1e-10);
            assert!(w.operator.is_hermitian(1e-12));
        }
    }

    #[test]
    fn mixed_state_value() {
        let v = magic_value(&DensityMatrix::maximally_mixed(3)).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bounds() {
        assert_eq!(nchv_bound_magic(), 0.0);
        assert_eq!(nchv_bound_magic_with(&[0, 1, 2, 3], false), 1);
        let (q, rho) = quantum_max_magic().unwrap();
        assert!((q - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-8);
        assert!((magic_value(&rho).unwrap() - q).abs() < 1e-9);
    }

    #[test]
    fn phase_gate_permutes_witnesses() {
        let report = unitary_conjugation_check(&phase_gate(), &[DensityMatrix::maximally_mixed(3)]).unwrap();
        assert!(report.is_nontrivial());
        assert!(report.max_value_change.unwrap() < 1e-12);
        let id = unitary_conjugation_check(&ComplexMatrix::identity(3), &[]).unwrap();
        assert_eq!(id.permutation, Some((0..9).collect()));
    }

    #[test]
    fn non_unitary_is_rejected() {
        let m = ComplexMatrix::diagonal(&[1.0, 2.0, 1.0]);
        assert_eq!(unitary_conjugation_check(&m, &[]).unwrap_err(), Error::NotUnitary);
    }
}
