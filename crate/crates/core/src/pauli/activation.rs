use serde::{Deserialize, Serialize};

use super::word::{stabilizer_expectation, PauliWord};
use crate::error::{Error, Result};
use crate::linalg::{luders_update, DensityMatrix, Projector};

/// Peres–Mermin observables on one party's (polarization, path) qubits.
pub const PM_OBSERVABLES: [(&str, &str); 9] = [
    ("A", "I.Z"),
    ("B", "Z.I"),
    ("C", "Z.Z"),
    ("a", "X.I"),
    ("b", "I.X"),
    ("c", "X.X"),
    ("alpha", "X.Z"),
    ("beta", "Z.X"),
    ("gamma", "Y.Y"),
];

/// Contexts of the square with the sign each contributes to chi.
pub const PM_CONTEXTS: [([usize; 3], i8); 6] = [
    ([2, 0, 1], 1),
    ([5, 4, 3], 1),
    ([7, 8, 6], 1),
    ([6, 0, 3], 1),
    ([7, 4, 1], 1),
    ([5, 8, 2], -1),
];

/// Cross-correlation terms of S as (observable, context) index pairs.
pub const S_TERMS: [(usize, usize); 12] = [
    (0, 0),
    (1, 0),
    (4, 1),
    (3, 1),
    (8, 2),
    (6, 2),
    (0, 3),
    (3, 3),
    (4, 4),
    (1, 4),
    (8, 5),
    (2, 5),
];

/// The classical bound of omega.
pub const OMEGA_LHV_BOUND: f64 = 16.0;

fn alice_word(obs: usize) -> PauliWord {
    PM_OBSERVABLES[obs].1.parse().expect("builtin word")
}

fn alice_on_four(obs: usize) -> PauliWord {
    alice_word(obs)
        .tensor(&PauliWord::identity(2))
        .expect("four qubits")
}

fn correlation_word(obs: usize) -> PauliWord {
    let w = alice_word(obs);
    w.tensor(&w).expect("four qubits")
}

fn context_product(ctx: usize) -> PauliWord {
    let [i, j, k] = PM_CONTEXTS[ctx].0;
    let ij = super::pauli_multiply(&alice_word(i), &alice_word(j)).expect("same size");
    super::pauli_multiply(&ij, &alice_word(k)).expect("same size")
}

fn expect_dim(rho: &DensityMatrix, d: usize) -> Result<()> {
    if rho.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Signed sum of the six context-product expectations on a two-qubit state.
pub fn peres_mermin_chi(rho: &DensityMatrix) -> Result<f64> {
    expect_dim(rho, 4)?;
    let mut chi = 0.0;
    for (ctx, &(_, sign)) in PM_CONTEXTS.iter().enumerate() {
        chi += f64::from(sign) * stabilizer_expectation(rho, &context_product(ctx))?;
    }
    Ok(chi)
}

/// Maximum of chi over all `2^9` deterministic `+-1` assignments.
pub fn peres_mermin_classical_bound() -> i32 {
    (0u32..1 << 9)
        .map(|bits| {
            let v = |o: usize| if bits >> o & 1 == 1 { -1 } else { 1 };
            PM_CONTEXTS
                .iter()
                .map(|&([i, j, k], sign)| i32::from(sign) * v(i) * v(j) * v(k))
                .sum::<i32>()
        })
        .max()
        .expect("nonempty")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaBreakdown {
    pub chi: f64,
    /// `|<O (x) O'>|` for each entry of [`S_TERMS`].
    pub correlations: Vec<f64>,
    pub value: f64,
}

/// Evaluates `chi` on the first party's marginal plus the twelve absolute
/// cross correlations on the four-qubit state.
pub fn activation_breakdown(xi: &DensityMatrix) -> Result<OmegaBreakdown> {
    expect_dim(xi, 16)?;
    let chi = peres_mermin_chi(&xi.partial_trace_second(4, 4)?)?;
    let correlations = S_TERMS
        .iter()
        .map(|&(obs, _)| stabilizer_expectation(xi, &correlation_word(obs)).map(f64::abs))
        .collect::<Result<Vec<_>>>()?;
    let value = chi + correlations.iter().sum::<f64>();
    Ok(OmegaBreakdown {
        chi,
        correlations,
        value,
    })
}

pub fn activation_omega(xi: &DensityMatrix) -> Result<f64> {
    Ok(activation_breakdown(xi)?.value)
}

/// For each S term, how far `|<O (x) O'>|` moves after first measuring the
/// other two observables of its context on the first party.
pub fn no_signaling_residuals(xi: &DensityMatrix) -> Result<Vec<f64>> {
    expect_dim(xi, 16)?;
    S_TERMS
        .iter()
        .map(|&(obs, ctx)| {
            let word = correlation_word(obs);
            let before = stabilizer_expectation(xi, &word)?.abs();
            let others: Vec<usize> = PM_CONTEXTS[ctx].0.into_iter().filter(|&o| o != obs).collect();
            let family = joint_eigenprojectors(&alice_on_four(others[0]), &alice_on_four(others[1]))?;
            let measured = luders_update(xi, &family)?;
            let after = stabilizer_expectation(&measured, &word)?.abs();
            Ok((after - before).abs())
        })
        .collect()
}

fn joint_eigenprojectors(p: &PauliWord, q: &PauliWord) -> Result<Vec<Projector>> {
    let (mp, mq) = (p.matrix(), q.matrix());
    let id = crate::linalg::ComplexMatrix::identity(mp.rows());
    let mut out = Vec::with_capacity(4);
    for sp in [1.0, -1.0] {
        for sq in [1.0, -1.0] {
            let left = (&id + &mp.scale_real(sp)).scale_real(0.5);
            let right = (&id + &mq.scale_real(sq)).scale_real(0.5);
            let m = left.matmul(&right)?;
            if m.max_abs() > 1e-12 {
                out.push(Projector::new(m)?);
            }
        }
    }
    Ok(out)
}

/// Maximum of omega over all `2^18` deterministic assignments of `+-1` to
/// the nine observables of each party.
pub fn lhv_max_omega() -> i32 {
    (0u32..1 << 18)
        .map(|bits| {
            let alice = |o: usize| if bits >> o & 1 == 1 { -1 } else { 1 };
            let bob = |o: usize| if bits >> (9 + o) & 1 == 1 { -1 } else { 1 };
            let chi: i32 = PM_CONTEXTS
                .iter()
                .map(|&([i, j, k], sign)| i32::from(sign) * alice(i) * alice(j) * alice(k))
                .sum();
            let s: i32 = S_TERMS.iter().map(|&(o, _)| (alice(o) * bob(o)).abs()).sum();
            chi + s
        })
        .max()
        .expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, ComplexMatrix};

    fn singlet_pair() -> DensityMatrix {
        // Positions (0, 2) and (1, 3) each hold a singlet.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amp = vec![c64(0.0, 0.0); 16];
        for (b0, b1, b2, b3, sign) in [
            (0, 0, 1, 1, 1.0),
            (0, 1, 1, 0, -1.0),
            (1, 0, 0, 1, -1.0),
            (1, 1, 0, 0, 1.0),
        ] {
            amp[b0 << 3 | b1 << 2 | b2 << 1 | b3] = c64(sign * s * s, 0.0);
        }
        DensityMatrix::pure(&amp).unwrap()
    }

    #[test]
    fn context_products_are_signed_identities() {
        let id = ComplexMatrix::identity(4);
        for (ctx, &(_, sign)) in PM_CONTEXTS.iter().enumerate() {
            let m = context_product(ctx).matrix();
            let expected = id.scale_real(if ctx == 5 { -1.0 } else { 1.0 });
            assert!(m.max_abs_diff(&expected).unwrap() < 1e-12, "context {ctx}");
            assert!(f64::from(sign) * m[(0, 0)].re > 0.0);
        }
    }

    #[test]
    fn chi_is_six_for_mixed_and_four_classically() {
        let chi = peres_mermin_chi(&DensityMatrix::maximally_mixed(4)).unwrap();
        assert!((chi - 6.0).abs() < 1e-12);
        assert_eq!(peres_mermin_classical_bound(), 4);
    }

    #[test]
    fn omega_reaches_eighteen() {
        let b = activation_breakdown(&singlet_pair()).unwrap();
        assert!((b.chi - 6.0).abs() < 1e-10);
        assert!(b.correlations.iter().all(|c| (c - 1.0).abs() < 1e-10));
        assert!((b.value - 18.0).abs() < 1e-9);
        assert!(no_signaling_residuals(&singlet_pair()).unwrap().iter().all(|r| *r < 1e-9));
    }

    #[test]
    fn product_state_stays_within_classical_bound() {
        let mut amp = vec![c64(0.0, 0.0); 16];
        amp[0] = c64(1.0, 0.0);
        let v = activation_omega(&DensityMatrix::pure(&amp).unwrap()).unwrap();
        assert!(v <= OMEGA_LHV_BOUND + 1e-9, "{v}");
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let rho = DensityMatrix::maximally_mixed(8);
        assert!(matches!(activation_omega(&rho), Err(Error::DimensionMismatch { .. })));
    }
}
