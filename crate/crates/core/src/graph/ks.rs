use super::ExclusivityGraph;
use crate::error::{Error, Result};

/// A {0,1} colouring of the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsAssignment {
    pub values: Vec<u8>,
}

impl KsAssignment {
    /// No two adjacent vertices both 1 and every basis has exactly one 1.
    pub fn is_valid(&self, g: &ExclusivityGraph, bases: &[Vec<usize>]) -> bool {
        if self.values.len() != g.n() || self.values.iter().any(|&v| v > 1) {
            return false;
        }
        let edges_ok = g
            .edges()
            .iter()
            .all(|&(u, v)| !(self.values[u] == 1 && self.values[v] == 1));
        let bases_ok = bases
            .iter()
            .all(|b| b.iter().filter(|&&v| self.values[v] == 1).count() == 1);
        edges_ok && bases_ok
    }
}

/// Searches for a Kochen-Specker colouring: exclusivity on every edge and
/// exactly one 1 per basis. Returns `None` when no colouring exists.
pub fn ks_assignment_search(
    g: &ExclusivityGraph,
    bases: &[Vec<usize>],
) -> Result<Option<KsAssignment>> {
    for b in bases {
        if b.iter().any(|&v| v >= g.n()) || !g.is_clique(b) {
            return Err(Error::BasisNotClique(b.clone()));
        }
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut member_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, b) in bases.iter().enumerate() {
        for &v in b {
            member_of[v].push(k);
        }
    }
    let mut search = Backtrack {
        g,
        bases,
        member_of: &member_of,
        values: vec![None; n],
    };
    if search.assign(&order, 0) {
        let values = search.values.iter().map(|v| v.unwrap_or(0)).collect();
        let found = KsAssignment { values };
        debug_assert!(found.is_valid(g, bases));
        Ok(Some(found))
    } else {
        Ok(None)
    }
}

struct Backtrack<'a> {
    g: &'a ExclusivityGraph,
    bases: &'a [Vec<usize>],
    member_of: &'a [Vec<usize>],
    values: Vec<Option<u8>>,
}

impl Backtrack<'_> {
    fn assign(&mut self, order: &[usize], pos: usize) -> bool {
        let Some(&v) = order.get(pos) else {
            return true;
        };
        for value in [1u8, 0] {
            self.values[v] = Some(value);
            if self.consistent(v) && self.assign(order, pos + 1) {
                return true;
            }
        }
        self.values[v] = None;
        false
    }

    fn consistent(&self, v: usize) -> bool {
        if self.values[v] == Some(1)
            && self
                .g
                .neighbors(v)
                .iter()
                .any(|&u| self.values[u] == Some(1))
        {
            return false;
        }
        self.member_of[v].iter().all(|&k| {
            let basis = &self.bases[k];
            let ones = basis.iter().filter(|&&u| self.values[u] == Some(1)).count();
            let open = basis.iter().filter(|&&u| self.values[u].is_none()).count();
            ones <= 1 && ones + open >= 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    #[test]
    fn triangle_basis_admits_a_colouring() {
        let g = ExclusivityGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let found = ks_assignment_search(&g, &[vec![0, 1, 2]]).unwrap().unwrap();
        assert_eq!(found.values.iter().filter(|&&v| v == 1).count(), 1);
    }

    #[test]
    fn non_clique_basis_is_an_error() {
        let g = cycle(5);
        assert!(ks_assignment_search(&g, &[vec![0, 2]]).is_err());
    }

    #[test]
    fn no_bases_means_all_zero_works() {
        let g = cycle(5);
        assert!(ks_assignment_search(&g, &[]).unwrap().is_some());
    }
}
