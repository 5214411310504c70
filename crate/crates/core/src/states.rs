//! Named states and the state-file format.
//!
//! ```text
//! dim 3
//! pure (1, 0, 1/2+i)
//! ```
//!
//! or `mixed` followed by `dim` rows of `dim` whitespace- or
//! comma-separated entries. Pure amplitudes are normalized on load.

use crate::error::{Error, Result};
use crate::linalg::{c64, Complex64, ComplexMatrix, DensityMatrix};
use crate::rays::parse_complex;

/// Tags accepted by [`builtin_state`].
pub const BUILTIN_STATES: [&str; 5] = ["mixed", "xi", "phi+", "maxent3x3", "magicopt"];

/// Two singlets with qubit order (A1, A2, B1, B2): one on positions (0, 2),
/// one on (1, 3).
pub fn xi() -> DensityMatrix {
    let half = c64(0.5, 0.0);
    let mut amp = vec![c64(0.0, 0.0); 16];
    // singlet(a, b) = (|01> - |10>)/sqrt2; the product has amplitude
    // sign(a-pair) * sign(b-pair) / 2 on |a0 a1 b0 b1>.
    for (a0, b0, s0) in [(0usize, 1usize, 1.0), (1, 0, -1.0)] {
        for (a1, b1, s1) in [(0usize, 1usize, 1.0), (1, 0, -1.0)] {
            amp[a0 << 3 | a1 << 2 | b0 << 1 | b1] = half * (s0 * s1);
        }
    }
    DensityMatrix::pure(&amp).expect("unit vector")
}

/// `(|00> + |11>)/sqrt2`.
pub fn phi_plus() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DensityMatrix::pure(&[c64(s, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(s, 0.0)]).expect("unit vector")
}

/// `(|00> - |11> + |22>)/sqrt3`.
pub fn maxent3x3() -> DensityMatrix {
    let s = 1.0 / 3f64.sqrt();
    let mut amp = vec![c64(0.0, 0.0); 9];
    amp[0] = c64(s, 0.0);
    amp[4] = c64(-s, 0.0);
    amp[8] = c64(s, 0.0);
    DensityMatrix::pure(&amp).expect("unit vector")
}

/// The qutrit state attaining the largest magic-witness value.
pub fn magicopt() -> DensityMatrix {
    crate::magic::quantum_max_magic().expect("fixed 3x3 problem").1
}

/// Resolves a builtin tag; `mixed` uses `native_dim`.
pub fn builtin_state(tag: &str, native_dim: usize) -> Result<DensityMatrix> {
    match tag {
        "mixed" => Ok(DensityMatrix::maximally_mixed(native_dim)),
        "xi" => Ok(xi()),
        "phi+" => Ok(phi_plus()),
        "maxent3x3" => Ok(maxent3x3()),
        "magicopt" => Ok(magicopt()),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line, message: String| Error::Parse { line, message };
    let (line, header) = lines.next().ok_or_else(|| err(1, "empty state file".into()))?;
    let dim: usize = header
        .strip_prefix("dim")
        .and_then(|d| d.trim().parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| err(line, format!("expected `dim <d>`, found `{header}`")))?;
    let (line, kind) = lines
        .next()
        .ok_or_else(|| err(line + 1, "expected `pure (...)` or `mixed`".into()))?;

    let parse_entries = |line: usize, body: &str| -> Result<Vec<Complex64>> {
        body.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_complex(t).map_err(|m| err(line, m)))
            .collect()
    };

    let state = if let Some(rest) = kind.strip_prefix("pure") {
        let body = rest
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| err(line, "pure amplitudes must be parenthesized".into()))?;
        // Entries like `1 + 2i` contain spaces, so split on commas only.
        let amps: Vec<Complex64> = body
            .split(',')
            .map(|t| parse_complex(t).map_err(|m| err(line, m)))
            .collect::<Result<_>>()?;
        if amps.len() != dim {
            return Err(err(line, format!("expected {dim} amplitudes, found {}", amps.len())));
        }
        let n = crate::linalg::norm(&amps);
        if n == 0.0 {
            return Err(err(line, "zero state vector".into()));
        }
        DensityMatrix::pure(&amps.iter().map(|a| a / n).collect::<Vec<_>>())
    } else if kind == "mixed" {
        let mut rows = Vec::with_capacity(dim);
        for r in 0..dim {
            let (line, body) = lines
                .next()
                .ok_or_else(|| err(line + r + 1, format!("expected {dim} matrix rows")))?;
            let row = parse_entries(line, body)?;
            if row.len() != dim {
                return Err(err(line, format!("expected {dim} entries, found {}", row.len())));
            }
            rows.push(row);
        }
        DensityMatrix::new(ComplexMatrix::from_rows(&rows)?)
    } else {
        return Err(err(line, format!("expected `pure` or `mixed`, found `{kind}`")));
    };
    if let Some((line, extra)) = lines.next() {
        return Err(err(line, format!("unexpected trailing content `{extra}`")));
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_is_product_of_singlets() {
        let rho = xi();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        let alice = rho.partial_trace_second(4, 4).unwrap();
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!(alice.matrix().max_abs_diff(mixed.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn parses_pure_and_mixed() {
        let p = parse_state("dim 2\npure (1, i)\n").unwrap();
        assert!((p.matrix()[(0, 1)] - c64(0.0, -0.5)).norm() < 1e-12);
        let m = parse_state("# comment\ndim 2\nmixed\n1/2 0\n0 0.5\n").unwrap();
        assert!(m.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn reports_bad_lines() {
        assert!(matches!(parse_state("dim 2\npure (1)\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_state("dim 2\nmixed\n1 0\n0 q\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_state("dims 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_state("dim 2\nmixed\n1 0\n0 1\n"), Err(Error::InvalidState(_))));
    }

    #[test]
    fn unknown_tag() {
        assert_eq!(builtin_state("bogus", 3).unwrap_err(), Error::UnknownBuiltin("bogus".into()));
    }
}
