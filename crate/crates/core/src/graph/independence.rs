use super::{mask_to_vec, ExclusivityGraph};
use crate::error::Result;

/// Size of a largest independent set, computed exactly.
pub fn independence_number(g: &ExclusivityGraph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}

/// A largest independent set, found by branch and bound on the complement
/// graph with greedy-colouring bounds.
pub fn maximum_independent_set(g: &ExclusivityGraph) -> Result<Vec<usize>> {
    let adj = g.bitmasks()?;
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // Independent sets of g are cliques of the complement.
    let comp: Vec<u64> = adj
        .iter()
        .enumerate()
        .map(|(v, &row)| !row & all & !(1u64 << v))
        .collect();
    let mut search = Search {
        adj: &comp,
        best: 0,
        best_size: 0,
    };
    search.expand(0, 0, all);
    Ok(mask_to_vec(search.best))
}

struct Search<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
}

impl Search<'_> {
    fn expand(&mut self, current: u64, size: u32, mut cand: u64) {
        if cand == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = current;
            }
            return;
        }
        let (order, colors) = self.color_sort(cand);
        for i in (0..order.len()).rev() {
            if size + colors[i] <= self.best_size {
                return;
            }
            let v = order[i];
            let bit = 1u64 << v;
            self.expand(current | bit, size + 1, cand & self.adj[v]);
            cand &= !bit;
        }
    }

    /// Greedy sequential colouring; `colors[i]` bounds the clique size among
    /// `order[..=i]`.
    fn color_sort(&self, cand: u64) -> (Vec<usize>, Vec<u32>) {
        let mut order = Vec::with_capacity(cand.count_ones() as usize);
        let mut colors = Vec::with_capacity(order.capacity());
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut avail = uncolored;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1u64 << v) & !self.adj[v];
                uncolored &= !(1u64 << v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, icosahedron, icosahedron_with_auxiliary};

    #[test]
    fn known_values() {
        assert_eq!(independence_number(&cycle(5)).unwrap(), 2);
        assert_eq!(independence_number(&cycle(7)).unwrap(), 3);
        assert_eq!(independence_number(&icosahedron()).unwrap(), 3);
        assert_eq!(independence_number(&icosahedron_with_auxiliary()).unwrap(), 4);
        assert_eq!(independence_number(&ExclusivityGraph::new(6)).unwrap(), 6);
        assert_eq!(independence_number(&ExclusivityGraph::new(0)).unwrap(), 0);
    }

    #[test]
    fn witness_is_independent() {
        let g = icosahedron();
        let set = maximum_independent_set(&g).unwrap();
        assert!(g.is_independent(&set));
    }

    #[test]
    fn oversized_graph_is_refused() {
        assert!(independence_number(&ExclusivityGraph::new(65)).is_err());
    }
}
