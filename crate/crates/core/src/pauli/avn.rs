use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::word::{commutes, pauli_multiply, stabilizer_expectation, PauliWord};
use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;

/// A product of atoms asserted to take the value `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvnClause {
    /// Indices into the system's atom registry.
    pub factors: Vec<usize>,
    pub value: i8,
}

/// Atoms (observables with their own response function) and the clauses
/// constraining their products.
#[derive(Debug, Clone, PartialEq)]
pub struct AvnSystem {
    atoms: Vec<(String, PauliWord)>,
    clauses: Vec<AvnClause>,
}

/// Outcome of the parity analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AvnVerdict {
    /// The listed clauses multiply to `+1 = -1`.
    Contradiction { clauses: Vec<usize> },
    /// A `+-1` value per atom satisfying every clause.
    Consistent { model: Vec<i8> },
}

impl AvnSystem {
    /// Validates atom names, clause values and intra-clause commutation.
    pub fn new(atoms: Vec<(String, PauliWord)>, clauses: Vec<AvnClause>) -> Result<Self> {
        let n = atoms.first().map(|(_, w)| w.n()).unwrap_or(0);
        for (i, (name, w)) in atoms.iter().enumerate() {
            if atoms[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::InvalidArgument(format!("atom `{name}` registered twice")));
            }
            if w.n() != n {
                return Err(Error::SizeMismatch(n, w.n()));
            }
            if !w.is_hermitian() {
                return Err(Error::InvalidObservable(format!("atom `{name}` = {w} is not Hermitian")));
            }
        }
        for (c, clause) in clauses.iter().enumerate() {
            if clause.value != 1 && clause.value != -1 {
                return Err(Error::InvalidArgument(format!(
                    "clause {c} asserts {} instead of +-1",
                    clause.value
                )));
            }
            for &f in &clause.factors {
                if f >= atoms.len() {
                    return Err(Error::UnregisteredAtom(format!("#{f}")));
                }
            }
            for (i, &a) in clause.factors.iter().enumerate() {
                for &b in &clause.factors[i + 1..] {
                    if !commutes(&atoms[a].1, &atoms[b].1)? {
                        return Err(Error::NonCommutingClause {
                            clause: c,
                            a: atoms[a].0.clone(),
                            b: atoms[b].0.clone(),
                        });
                    }
                }
            }
        }
        Ok(Self { atoms, clauses })
    }

    pub fn atoms(&self) -> &[(String, PauliWord)] {
        &self.atoms
    }

    pub fn clauses(&self) -> &[AvnClause] {
        &self.clauses
    }

    pub fn qubits(&self) -> usize {
        self.atoms.first().map_or(0, |(_, w)| w.n())
    }

    /// Operator product of a clause's factors, in the listed order.
    pub fn clause_product(&self, c: usize) -> Result<PauliWord> {
        let clause = &self.clauses[c];
        let mut acc = PauliWord::identity(self.qubits());
        for &f in &clause.factors {
            acc = pauli_multiply(&acc, &self.atoms[f].1)?;
        }
        Ok(acc)
    }

    /// Expectation of each clause product on `rho`.
    pub fn clause_expectations(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        (0..self.clauses.len())
            .map(|c| stabilizer_expectation(rho, &self.clause_product(c)?))
            .collect()
    }

    /// True when `model` gives every clause its asserted value.
    pub fn satisfied_by(&self, model: &[i8]) -> bool {
        model.len() == self.atoms.len()
            && self.clauses.iter().all(|c| {
                c.factors.iter().map(|&f| model[f]).product::<i8>() == c.value
            })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("atoms:\n");
        for (name, w) in &self.atoms {
            let _ = writeln!(out, "  {name} = {w}");
        }
        out.push_str("clauses:\n");
        for c in &self.clauses {
            let names: Vec<&str> = c.factors.iter().map(|&f| self.atoms[f].0.as_str()).collect();
            let _ = writeln!(out, "  [{}] = {:+}", names.join(", "), c.value);
        }
        out
    }
}

/// Parses the two-block text format:
///
/// ```text
/// atoms:
///   z1 = Z.I.I.I
/// clauses:
///   [z1, z2] = -1
/// ```
pub fn parse_avn(text: &str) -> Result<AvnSystem> {
    #[derive(PartialEq)]
    enum Block {
        None,
        Atoms,
        Clauses,
    }
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut block = Block::None;
    let mut atoms: Vec<(String, PauliWord)> = Vec::new();
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "atoms:" => {
                block = Block::Atoms;
                continue;
            }
            "clauses:" => {
                block = Block::Clauses;
                continue;
            }
            _ => {}
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, format!("expected `=` in `{line}`")))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        match block {
            Block::None => return Err(err(line_no, "content before `atoms:` block".into())),
            Block::Atoms => {
                if lhs.is_empty() || !lhs.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(err(line_no, format!("invalid atom name `{lhs}`")));
                }
                let w: PauliWord = rhs.parse().map_err(|e: Error| err(line_no, e.to_string()))?;
                atoms.push((lhs.to_string(), w));
            }
            Block::Clauses => {
                let inner = lhs
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| err(line_no, "clause must be `[a, b, ...] = +-1`".into()))?;
                let mut factors = Vec::new();
                for name in inner.split(',').map(str::trim) {
                    let idx = atoms
                        .iter()
                        .position(|(a, _)| a == name)
                        .ok_or_else(|| Error::UnregisteredAtom(name.to_string()))?;
                    factors.push(idx);
                }
                let value: i8 = match rhs {
                    "1" | "+1" => 1,
                    "-1" => -1,
                    other => return Err(err(line_no, format!("clause value `{other}` is not +-1"))),
                };
                clauses.push(AvnClause { factors, value });
            }
        }
    }
    AvnSystem::new(atoms, clauses)
}

/// Decides whether the clauses admit a noncontextual `+-1` assignment.
///
/// Each atom becomes a GF(2) variable (`-1` is 1) and each clause a parity
/// equation. When every atom occurs an even number of times the left-hand
/// sides multiply to `+1`, so a `-1` product of asserted values is an
/// immediate contradiction; otherwise Gaussian elimination decides.
pub fn avn_parity_check(sys: &AvnSystem) -> AvnVerdict {
    let m = sys.atoms.len();
    let c = sys.clauses.len();
    let mut occurrences = vec![0usize; m];
    for clause in &sys.clauses {
        for &f in &clause.factors {
            occurrences[f] += 1;
        }
    }
    let product: i8 = sys.clauses.iter().map(|cl| cl.value).product();
    if c > 0 && occurrences.iter().all(|k| k % 2 == 0) && product == -1 {
        return AvnVerdict::Contradiction {
            clauses: (0..c).collect(),
        };
    }

    let words = m.div_ceil(64).max(1);
    let tags = c.div_ceil(64).max(1);
    struct Row {
        vars: Vec<u64>,
        rhs: bool,
        origin: Vec<u64>,
    }
    let mut rows: Vec<Row> = sys
        .clauses
        .iter()
        .enumerate()
        .map(|(i, cl)| {
            let mut vars = vec![0u64; words];
            for &f in &cl.factors {
                vars[f / 64] ^= 1 << (f % 64);
            }
            let mut origin = vec![0u64; tags];
            origin[i / 64] |= 1 << (i % 64);
            Row {
                vars,
                rhs: cl.value == -1,
                origin,
            }
        })
        .collect();

    let bit = |v: &[u64], k: usize| v[k / 64] >> (k % 64) & 1 == 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..m {
        let Some(p) = (next..rows.len()).find(|&r| bit(&rows[r].vars, col)) else {
            continue;
        };
        rows.swap(next, p);
        for r in 0..rows.len() {
            if r != next && bit(&rows[r].vars, col) {
                let (src, dst) = if r < next {
                    let (a, b) = rows.split_at_mut(next);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&a[next], &mut b[0])
                };
                for (d, s) in dst.vars.iter_mut().zip(&src.vars) {
                    *d ^= s;
                }
                for (d, s) in dst.origin.iter_mut().zip(&src.origin) {
                    *d ^= s;
                }
                dst.rhs ^= src.rhs;
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    if let Some(bad) = rows[next..].iter().find(|r| r.rhs) {
        let clauses = (0..c).filter(|&i| bit(&bad.origin, i)).collect();
        return AvnVerdict::Contradiction { clauses };
    }
    let mut model = vec![1i8; m];
    for &(r, col) in &pivots {
        // Free variables stay at +1, so each pivot equals its row's parity.
        if rows[r].rhs {
            model[col] = -1;
        }
    }
    debug_assert!(sys.satisfied_by(&model));
    AvnVerdict::Consistent { model }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(text: &str) -> AvnSystem {
        parse_avn(text).unwrap()
    }

    #[test]
    fn odd_cycle_of_parities_is_contradictory() {
        let sys = system(
            "atoms:\n a = Z.I\n b = I.Z\n c = Z.Z\nclauses:\n [a, b] = 1\n [a, c] = 1\n [b, c] = -1\n",
        );
        assert!(matches!(avn_parity_check(&sys), AvnVerdict::Contradiction { .. }));
    }

    #[test]
    fn consistent_system_yields_a_model() {
        let sys = system(
            "atoms:\n a = Z.I\n b = I.Z\n c = Z.Z\nclauses:\n [a] = -1\n [a, b] = 1\n [c] = 1\n",
        );
        match avn_parity_check(&sys) {
            AvnVerdict::Consistent { model } => {
                assert_eq!(model, vec![-1, -1, 1]);
                assert!(sys.satisfied_by(&model));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn contradiction_subset_is_minimal_enough_to_check() {
        // Clause 0 is irrelevant; clauses 1..4 form the contradiction.
        let sys = system(
            "atoms:\n u = X.I\n a = Z.I\n b = I.Z\n c = Z.Z\nclauses:\n [u] = 1\n [a, b] = 1\n [a, c] = 1\n [b, c] = -1\n",
        );
        match avn_parity_check(&sys) {
            AvnVerdict::Contradiction { clauses } => assert_eq!(clauses, vec![1, 2, 3]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_commuting_clause_is_rejected() {
        let err = parse_avn("atoms:\n a = X\n b = Z\nclauses:\n [a, b] = 1\n").unwrap_err();
        assert!(matches!(err, Error::NonCommutingClause { clause: 0, .. }));
    }

    #[test]
    fn unknown_atom_is_rejected() {
        let err = parse_avn("atoms:\n a = X\nclauses:\n [a, q] = 1\n").unwrap_err();
        assert_eq!(err, Error::UnregisteredAtom("q".into()));
    }

    #[test]
    fn text_round_trip() {
        let sys = system("atoms:\n a = -Z.Z\n b = Y.Y\nclauses:\n [a, b] = -1\n");
        assert_eq!(parse_avn(&sys.to_text()).unwrap(), sys);
    }
}
