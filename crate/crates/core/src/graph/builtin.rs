use super::ExclusivityGraph;
use crate::error::{Error, Result};

pub const BUILTIN_GRAPHS: [&str; 4] = ["c5", "k4", "icosa", "icosa16"];

/// Edges of the icosahedron skeleton. For sign pairs `(s1, s2)` taken in the
/// order `(+,+), (+,-), (-,+), (-,-)`, vertices `3p, 3p+1, 3p+2` sit at
/// `(0, s1, s2 phi)`, `(s1, s2 phi, 0)` and `(s2 phi, 0, s1)`.
const ICOSAHEDRON_EDGES: [(usize, usize); 30] = [
    (0, 1), (0, 2), (0, 5), (0, 6), (0, 7), (1, 2), (1, 3), (1, 7), (1, 8), (2, 4),
    (2, 6), (2, 8), (3, 7), (3, 8), (3, 9), (3, 11), (4, 6), (4, 8), (4, 9), (4, 10),
    (5, 6), (5, 7), (5, 10), (5, 11), (6, 10), (7, 11), (8, 9), (9, 10), (9, 11), (10, 11),
];

/// Four vertex-disjoint triangles covering the icosahedron; auxiliary vertex
/// `12 + k` completes triangle `k` to a 4-clique.
pub(crate) const ICOSAHEDRON_TRIANGLES: [[usize; 3]; 4] =
    [[0, 1, 2], [3, 7, 11], [4, 8, 9], [5, 6, 10]];

pub fn cycle(n: usize) -> ExclusivityGraph {
    let mut g = ExclusivityGraph::new(n);
    if n >= 3 {
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).expect("cycle edge in range");
        }
    } else if n == 2 {
        g.add_edge(0, 1).expect("edge in range");
    }
    g
}

pub fn complete(n: usize) -> ExclusivityGraph {
    let mut g = ExclusivityGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("edge in range");
        }
    }
    g
}

pub fn icosahedron() -> ExclusivityGraph {
    ExclusivityGraph::from_edges(12, &ICOSAHEDRON_EDGES).expect("static edge list is valid")
}

/// Icosahedron plus four auxiliary vertices, so that every vertex lies in a 4-clique.
pub fn icosahedron_with_auxiliary() -> ExclusivityGraph {
    let mut g = ExclusivityGraph::new(16);
    for &(u, v) in &ICOSAHEDRON_EDGES {
        g.add_edge(u, v).expect("edge in range");
    }
    for (k, tri) in ICOSAHEDRON_TRIANGLES.iter().enumerate() {
        for &v in tri {
            g.add_edge(12 + k, v).expect("edge in range");
        }
    }
    g
}

pub fn builtin_graph(name: &str) -> Result<ExclusivityGraph> {
    match name {
        "c5" => Ok(cycle(5)),
        "k4" => Ok(complete(4)),
        "icosa" => Ok(icosahedron()),
        "icosa16" => Ok(icosahedron_with_auxiliary()),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}
