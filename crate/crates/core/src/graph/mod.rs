//! Exclusivity graphs and their invariants.

mod builtin;
mod cliques;
mod format;
mod independence;
mod ks;
mod representation;
mod theta;

pub use builtin::{builtin_graph, complete, cycle, icosahedron, icosahedron_with_auxiliary, BUILTIN_GRAPHS};
pub use cliques::{cliques_of_size, maximal_cliques};
pub use format::{parse_graph, serialize_graph};
pub use independence::{independence_number, maximum_independent_set};
pub use ks::{ks_assignment_search, KsAssignment};
pub use representation::{extend_representation, orthogonal_representation, OrthogonalRepresentation};
pub use theta::{lovasz_theta, lovasz_theta_with, ThetaCertificate, ThetaOptions};

use crate::error::{Error, Result};

/// Vertex budget of the exact graph algorithms (one machine word per row).
pub const MAX_VERTICES: usize = 64;

/// Simple undirected graph; vertices are events and edges mark exclusivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusivityGraph {
    n: usize,
    adj: Vec<bool>,
    labels: Vec<String>,
}

impl ExclusivityGraph {
    /// Edgeless graph with labels `0..n`.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u * self.n + v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.adj[v * self.n + u]).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adj[v * self.n + u]).collect()
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::new(self.n);
        g.labels = self.labels.clone();
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v {
                    g.adj[u * self.n + v] = !self.adj[u * self.n + v];
                }
            }
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut g = Self::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            if u >= self.n {
                return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
            }
            g.labels[i] = self.labels[u].clone();
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.adj[i * g.n + j] = true;
                }
            }
        }
        Ok(g)
    }

    /// True when every pair in `set` is adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            u < self.n && set[i + 1..].iter().all(|&v| self.has_edge(u, v))
        })
    }

    /// True when no pair in `set` is adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Adjacency rows as bit masks; requires `n <= 64`.
    pub fn bitmasks(&self) -> Result<Vec<u64>> {
        self.check_budget()?;
        Ok((0..self.n)
            .map(|u| {
                (0..self.n)
                    .filter(|&v| self.adj[u * self.n + v])
                    .fold(0u64, |m, v| m | (1 << v))
            })
            .collect())
    }

    pub(crate) fn check_budget(&self) -> Result<()> {
        if self.n > MAX_VERTICES {
            return Err(Error::BudgetExceeded {
                n: self.n,
                budget: MAX_VERTICES,
            });
        }
        Ok(())
    }
}

pub(crate) fn mask_to_vec(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}
