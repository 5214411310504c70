//! Shared fixtures for the benchmarks.

use ctxkit::graph::ExclusivityGraph;
use ctxkit::sampling::random_graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` Erdos-Renyi graphs on `n` vertices with edge probability `p`,
/// reproducible from `seed`.
pub fn random_graphs(count: usize, n: usize, p: f64, seed: u64) -> Vec<ExclusivityGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(n, p, &mut rng)).collect()
}
