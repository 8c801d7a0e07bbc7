//! Inputs shared by the benchmarks.

use isgw::{DirectedGraph, PartialBijection};

/// A rotation, a transposition and a rank-`n-1` partial identity; together
/// they generate the full symmetric inverse monoid on `n` points.
pub fn symmetric_generators(n: usize) -> Vec<PartialBijection> {
    let rotate = PartialBijection::new((0..n).map(|i| Some((i + 1) % n)).collect()).expect("a permutation");
    let mut swap: Vec<Option<usize>> = (0..n).map(Some).collect();
    if n > 1 {
        swap.swap(0, 1);
    }
    let swap = PartialBijection::new(swap).expect("a permutation");
    let drop_last = PartialBijection::partial_identity(n, &(0..n.saturating_sub(1)).collect::<Vec<_>>());
    vec![rotate, swap, drop_last]
}

/// `n` vertices on a directed cycle, each also carrying a loop.
pub fn looped_cycle(n: usize) -> DirectedGraph {
    let names: Vec<String> = (0..2 * n).map(|i| format!("e{i}")).collect();
    let edges: Vec<(&str, usize, usize)> = (0..n)
        .flat_map(|v| [(v, (v + 1) % n), (v, v)])
        .zip(&names)
        .map(|((s, r), id)| (id.as_str(), s, r))
        .collect();
    DirectedGraph::from_edges(n, &edges).expect("endpoints are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use isgw::InverseSemigroup;

    #[test]
    fn generators_reach_the_whole_monoid() {
        // |I_n| = sum over k of C(n,k)^2 k!
        for (n, size) in [(2, 7), (3, 34), (4, 209)] {
            let s = InverseSemigroup::from_generators(&symmetric_generators(n), 1000).unwrap();
            assert_eq!(s.len(), size);
        }
    }

    #[test]
    fn looped_cycle_shape() {
        let g = looped_cycle(3);
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 6));
        assert!(g.conditions().k.holds);
    }
}
