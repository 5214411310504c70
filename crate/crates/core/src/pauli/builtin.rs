use super::avn::{parse_avn, AvnSystem};
use crate::error::{Error, Result};

/// Names accepted by [`builtin_avn`].
pub const BUILTIN_AVN: [&str; 4] = ["cabello01", "phip_huang03", "peres_mermin", "bell_control"];

// Qubit positions are (A1, A2, B1, B2). The two singlets of the
// hyperentangled state pair position 0 with 2 and 1 with 3, so the labels
// 1..4 below sit at positions 0, 2, 1, 3.
pub(crate) const CABELLO01: &str = "\
# Two singlets shared between two parties; qubit order A1.A2.B1.B2
atoms:
  z1 = Z.I.I.I
  z2 = I.I.Z.I
  z3 = I.Z.I.I
  z4 = I.I.I.Z
  x1 = X.I.I.I
  x2 = I.I.X.I
  x3 = I.X.I.I
  x4 = I.I.I.X
  z1z3 = Z.Z.I.I
  x1x3 = X.X.I.I
  z2x4 = I.I.Z.X
  x2z4 = I.I.X.Z
clauses:
  [z1, z2] = -1
  [z3, z4] = -1
  [x1, x2] = -1
  [x3, x4] = -1
  [z1z3, z2, z4] = +1
  [x1x3, x2, x4] = +1
  [z2x4, z1, x3] = +1
  [x2z4, x1, z3] = +1
  [z1z3, x1x3, z2x4, x2z4] = -1
";

pub(crate) const PHIP_HUANG03: &str = "\
# Two qubits in (|00> + |11>)/sqrt(2) with split single-qubit responses
atoms:
  xz = X.Z
  zx = Z.X
  x1 = X.I
  z1 = Z.I
  x2 = I.X
  z2 = I.Z
clauses:
  [xz, x1, z2] = +1
  [zx, z1, x2] = +1
  [x1, x2] = +1
  [z1, z2] = +1
  [xz, zx] = -1
";

pub(crate) const PERES_MERMIN: &str = "\
# Peres-Mermin square on one party's two qubits (polarization.path)
atoms:
  A = I.Z
  B = Z.I
  C = Z.Z
  a = X.I
  b = I.X
  c = X.X
  alpha = X.Z
  beta = Z.X
  gamma = Y.Y
clauses:
  [C, A, B] = +1
  [c, b, a] = +1
  [beta, gamma, alpha] = +1
  [alpha, A, a] = +1
  [beta, b, B] = +1
  [c, gamma, C] = -1
";

pub(crate) const BELL_CONTROL: &str = "\
# Stabilizer of (|00> + |11>)/sqrt(2)
atoms:
  xx = X.X
  zz = Z.Z
  yy = Y.Y
clauses:
  [xx] = +1
  [zz] = +1
  [yy] = -1
  [xx, zz, yy] = -1
";

pub fn builtin_avn(name: &str) -> Result<AvnSystem> {
    let text = match name {
        "cabello01" => CABELLO01,
        "phip_huang03" => PHIP_HUANG03,
        "peres_mermin" => PERES_MERMIN,
        "bell_control" => BELL_CONTROL,
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    parse_avn(text)
}
