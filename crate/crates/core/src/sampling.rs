//! Seeded random states, rays and graphs.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::graph::ExclusivityGraph;
use crate::linalg::{norm, Complex64, ComplexMatrix, DensityMatrix};

fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let n = norm(&v);
        if n > 1e-6 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// Haar-random unit vector.
pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    gaussian_vector(dim, rng)
}

pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    DensityMatrix::pure(&gaussian_vector(dim, rng)).expect("unit vector")
}

/// `G G^dagger / tr` for a Ginibre matrix `G`, optionally mixed with a
/// random amount of the identity so that all purities are sampled.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let w = &g * &g.adjoint();
    let w = w.scale_real(1.0 / w.trace().re);
    let p: f64 = rng.random();
    let mixed = ComplexMatrix::identity(dim).scale_real((1.0 - p) / dim as f64);
    let m = &w.scale_real(p) + &mixed;
    DensityMatrix::new(m.hermitian_part()).expect("convex combination of states")
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> ExclusivityGraph {
    let mut g = ExclusivityGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("distinct in-range vertices");
            }
        }
    }
    g
}
