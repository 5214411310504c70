use super::{mask_to_vec, ExclusivityGraph};
use crate::error::Result;

/// All maximal cliques, each sorted ascending, listed in lexicographic order.
pub fn maximal_cliques(g: &ExclusivityGraph) -> Result<Vec<Vec<usize>>> {
    let adj = g.bitmasks()?;
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut out = Vec::new();
    if g.n() > 0 {
        bron_kerbosch(&adj, 0, all, 0, &mut out);
    }
    let mut cliques: Vec<Vec<usize>> = out.into_iter().map(mask_to_vec).collect();
    cliques.sort();
    Ok(cliques)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    // Tomita pivot: the vertex of P | X with most neighbours in P.
    let pivot = mask_to_vec(p | x)
        .into_iter()
        .max_by_key(|&u| ((adj[u] & p).count_ones(), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    for v in mask_to_vec(p & !adj[pivot]) {
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// All cliques of exactly `k` vertices in lexicographic order.
pub fn cliques_of_size(g: &ExclusivityGraph, k: usize) -> Result<Vec<Vec<usize>>> {
    let adj = g.bitmasks()?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    extend(&adj, all, k, &mut current, &mut out);
    Ok(out)
}

fn extend(adj: &[u64], cand: u64, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    let need = k - current.len();
    if (cand.count_ones() as usize) < need {
        return;
    }
    for v in mask_to_vec(cand) {
        // Only extend with later vertices so each clique appears once, ascending.
        let later = if v == 63 { 0 } else { cand & !((1u64 << (v + 1)) - 1) };
        current.push(v);
        extend(adj, later & adj[v], k, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, icosahedron};

    #[test]
    fn single_vertex_has_one_clique() {
        assert_eq!(maximal_cliques(&ExclusivityGraph::new(1)).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn cycle_cliques_are_its_edges() {
        let cliques = maximal_cliques(&cycle(5)).unwrap();
        assert_eq!(
            cliques,
            vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]
        );
    }

    #[test]
    fn icosahedron_has_twenty_triangles() {
        let g = icosahedron();
        assert_eq!(maximal_cliques(&g).unwrap().len(), 20);
        assert_eq!(cliques_of_size(&g, 3).unwrap().len(), 20);
        assert!(cliques_of_size(&g, 4).unwrap().is_empty());
    }
}
