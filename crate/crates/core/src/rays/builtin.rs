use super::ray::{Ray, RaySet};
use crate::error::{Error, Result};

pub const BUILTIN_RAYSETS: [&str; 3] = ["cabello18", "yu_oh13", "kcbs5"];

/// The 18 four-dimensional rays of the nine-basis Kochen-Specker set, in
/// order of first appearance when the bases are read column by column.
const CABELLO18: [[i64; 4]; 18] = [
    [1, 0, 0, 0],
    [0, 0, 1, -1],
    [0, 0, 1, 1],
    [0, 1, 0, 0],
    [0, 1, -1, 0],
    [0, 0, 0, 1],
    [0, 1, 1, 0],
    [-1, 1, 1, 1],
    [1, 1, 1, -1],
    [1, 0, 0, 1],
    [0, 1, 0, -1],
    [1, 1, -1, 1],
    [1, 0, 1, 0],
    [1, 1, 1, 1],
    [1, 0, -1, 0],
    [1, -1, 1, -1],
    [1, -1, 0, 0],
    [1, 1, -1, -1],
];

/// The nine bases of the 18-ray set as indices into [`CABELLO18`].
#[cfg(test)]
const CABELLO18_BASES: [[usize; 4]; 9] = [
    [0, 1, 2, 3],
    [0, 4, 5, 6],
    [4, 7, 8, 9],
    [7, 10, 11, 12],
    [10, 13, 14, 15],
    [1, 13, 16, 17],
    [2, 8, 11, 16],
    [3, 5, 12, 14],
    [6, 9, 15, 17],
];

/// Yu-Oh rays in the order h0..h3, y1-..y3-, y1+..y3+, z1..z3.
const YU_OH13: [(&str, [i64; 3]); 13] = [
    ("h0", [1, 1, 1]),
    ("h1", [-1, 1, 1]),
    ("h2", [1, -1, 1]),
    ("h3", [1, 1, -1]),
    ("y1-", [0, 1, -1]),
    ("y2-", [-1, 0, 1]),
    ("y3-", [1, -1, 0]),
    ("y1+", [0, 1, 1]),
    ("y2+", [1, 0, 1]),
    ("y3+", [1, 1, 0]),
    ("z1", [1, 0, 0]),
    ("z2", [0, 1, 0]),
    ("z3", [0, 0, 1]),
];

/// Five real 3-vectors whose orthogonality graph is the pentagon.
const KCBS5: [[i64; 3]; 5] = [[1, 0, 0], [0, 1, 0], [1, 0, 1], [1, 1, -1], [0, 1, 1]];

pub fn builtin_rayset(name: &str) -> Result<RaySet> {
    let rays: Vec<Ray> = match name {
        "cabello18" => CABELLO18
            .iter()
            .enumerate()
            .map(|(i, v)| Ray::from_ints(format!("r{}", i + 1), v))
            .collect::<Result<_>>()?,
        "yu_oh13" => YU_OH13
            .iter()
            .map(|(l, v)| Ray::from_ints(*l, v))
            .collect::<Result<_>>()?,
        "kcbs5" => KCBS5
            .iter()
            .enumerate()
            .map(|(i, v)| Ray::from_ints(format!("k{}", i + 1), v))
            .collect::<Result<_>>()?,
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    let dim = rays[0].dim();
    RaySet::new(name, dim, rays)
}
