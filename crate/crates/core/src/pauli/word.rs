use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};

/// Largest qubit count a word can address.
pub const MAX_QUBITS: usize = 32;

/// A phased Pauli word `i^k X^x Z^z` on `n` qubits.
///
/// Qubit 0 is the leftmost tensor factor and corresponds to bit 0 of the
/// masks. `Y` is stored as `i X Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliWord {
    n: usize,
    x: u64,
    z: u64,
    /// Exponent of `i`, modulo 4.
    k: u8,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        Self { n, x: 0, z: 0, k: 0 }
    }

    /// Builds `i^k X^x Z^z` directly from masks.
    pub fn from_masks(n: usize, x: u64, z: u64, k: u8) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!("{n} qubits exceed {MAX_QUBITS}")));
        }
        let all = (1u64 << n) - 1;
        if x & !all != 0 || z & !all != 0 {
            return Err(Error::InvalidArgument("mask addresses missing qubits".into()));
        }
        Ok(Self { n, x, z, k: k % 4 })
    }

    /// A single-qubit Pauli `letter` on qubit `q`.
    pub fn single(n: usize, q: usize, letter: char) -> Result<Self> {
        let mut s: Vec<char> = vec!['I'; n];
        *s.get_mut(q).ok_or_else(|| {
            Error::InvalidArgument(format!("qubit {q} out of range for {n} qubits"))
        })? = letter;
        let text: String = s.into_iter().collect();
        text.parse()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Phase relative to the plain letter product, as an exponent of `i`.
    pub fn letter_phase(&self) -> u8 {
        let y = (self.x & self.z).count_ones() as u8;
        (self.k + 4 - y % 4) % 4
    }

    /// One letter per qubit, without the phase.
    pub fn letters(&self) -> String {
        (0..self.n)
            .map(|q| match (self.x >> q & 1, self.z >> q & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            })
            .collect()
    }

    /// Hermitian words are those with a real letter phase.
    pub fn is_hermitian(&self) -> bool {
        self.letter_phase() % 2 == 0
    }

    /// Negation of the word.
    pub fn negated(&self) -> Self {
        Self {
            k: (self.k + 2) % 4,
            ..*self
        }
    }

    /// `self (x) other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Self::from_masks(
            self.n + other.n,
            self.x | other.x << self.n,
            self.z | other.z << self.n,
            self.k + other.k,
        )
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let x = ComplexMatrix::from_rows(&[vec![zero, one], vec![one, zero]]).expect("2x2");
        let z = ComplexMatrix::diagonal(&[1.0, -1.0]);
        let mut m = ComplexMatrix::identity(1);
        for q in 0..self.n {
            let mut factor = ComplexMatrix::identity(2);
            if self.x >> q & 1 == 1 {
                factor = &factor * &x;
            }
            if self.z >> q & 1 == 1 {
                factor = &factor * &z;
            }
            m = m.kron(&factor);
        }
        let phase = [one, Complex64::new(0.0, 1.0), -one, Complex64::new(0.0, -1.0)][self.k as usize];
        m.scale(phase)
    }
}

/// Group product with exact phase tracking.
pub fn pauli_multiply(a: &PauliWord, b: &PauliWord) -> Result<PauliWord> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    // Z^z1 X^x2 = (-1)^{z1.x2} X^x2 Z^z1
    let swaps = (a.z & b.x).count_ones() as u8;
    Ok(PauliWord {
        n: a.n,
        x: a.x ^ b.x,
        z: a.z ^ b.z,
        k: (a.k + b.k + 2 * (swaps % 2)) % 4,
    })
}

/// Symplectic commutation test.
pub fn commutes(a: &PauliWord, b: &PauliWord) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    Ok(((a.x & b.z).count_ones() + (a.z & b.x).count_ones()) % 2 == 0)
}

/// `tr(rho W)` for a Hermitian word.
pub fn stabilizer_expectation(rho: &DensityMatrix, w: &PauliWord) -> Result<f64> {
    let d = 1usize << w.n;
    if rho.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.dim(),
        });
    }
    let v = rho.matrix().trace_product(&w.matrix())?;
    if v.im.abs() > 1e-10 {
        return Err(Error::InvalidObservable(format!("word {w} is not Hermitian")));
    }
    Ok(v.re)
}

/// Dotted letters with an optional phase prefix, e.g. `-Z.Z.I.I` or `iX.Y`.
impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.letter_phase() as usize];
        let letters: Vec<String> = self.letters().chars().map(String::from).collect();
        write!(f, "{prefix}{}", letters.join("."))
    }
}

/// Accepts `XZIY`, `X.Z.I.Y` or `X Z I Y`, with an optional `+`, `-`, `i`
/// or `-i` prefix.
impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (prefix, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3u8, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        let letters: Vec<char> = body
            .chars()
            .filter(|c| !matches!(c, '.' | ' ' | '\t'))
            .collect();
        if letters.is_empty() {
            return Err(Error::InvalidArgument(format!("empty Pauli word `{s}`")));
        }
        let n = letters.len();
        let mut x = 0u64;
        let mut z = 0u64;
        let mut k = prefix;
        for (q, c) in letters.into_iter().enumerate() {
            match c.to_ascii_uppercase() {
                'I' => {}
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                    k += 1;
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown Pauli letter `{other}` in `{s}`"
                    )))
                }
            }
        }
        Self::from_masks(n, x, z, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let p = pauli_multiply(&w("X"), &w("Z")).unwrap();
        assert_eq!(p, w("-iY"));
        assert_eq!(p.to_string(), "-iY");
    }

    #[test]
    fn product_of_mixed_pairs_is_y_y() {
        let p = pauli_multiply(&w("XZ"), &w("ZX")).unwrap();
        assert_eq!(p, w("YY"));
    }

    #[test]
    fn display_round_trips() {
        for s in ["-Z.Z.I.I", "iX.Y", "Y", "I.I", "-iZ.Y"] {
            assert_eq!(w(s).to_string(), s);
        }
    }

    #[test]
    fn commutation() {
        assert!(commutes(&w("XX"), &w("ZZ")).unwrap());
        assert!(!commutes(&w("X"), &w("Z")).unwrap());
        assert!(commutes(&w("X"), &w("ZZ")).is_err());
    }

    #[test]
    fn hermiticity_follows_letter_phase() {
        assert!(w("-YY").is_hermitian());
        assert!(!w("iXZ").is_hermitian());
    }

    #[test]
    fn bad_letters_are_rejected() {
        assert!("XQ".parse::<PauliWord>().is_err());
        assert!("".parse::<PauliWord>().is_err());
    }
}
