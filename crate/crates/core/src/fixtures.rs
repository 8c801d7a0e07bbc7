//! Small named instances used throughout tests, the corpus and the CLI.

use crate::graphs::DirectedGraph;
use crate::selfsimilar::SelfSimilarAction;
use crate::semigroup::{InverseSemigroup, PartialBijection, DEFAULT_ELEMENT_CAP};

fn pb(images: &[Option<usize>]) -> PartialBijection {
    PartialBijection::new(images.to_vec()).expect("fixture map is injective")
}

fn relabel(s: InverseSemigroup, named: &[(&str, PartialBijection)]) -> InverseSemigroup {
    let labels = s
        .labels()
        .iter()
        .map(|l| {
            named
                .iter()
                .find(|(_, p)| p.to_string() == *l)
                .map_or_else(|| l.clone(), |(name, _)| name.to_string())
        })
        .collect();
    s.with_labels(labels)
}

/// Partial bijections of a two-point set. Points are 0 and 1; `Eij` maps `j` to `i`
/// with one-based names, so `E12` sends point 1 to point 0.
pub fn i2() -> InverseSemigroup {
    let id = pb(&[Some(0), Some(1)]);
    let x = pb(&[Some(1), Some(0)]);
    let e11 = pb(&[Some(0), None]);
    let gens = [id.clone(), x.clone(), e11.clone()];
    let s = InverseSemigroup::from_generators(&gens, DEFAULT_ELEMENT_CAP).unwrap();
    let named = [
        ("I", id),
        ("X", x),
        ("E11", e11),
        ("E12", pb(&[None, Some(0)])),
        ("E21", pb(&[Some(1), None])),
        ("E22", pb(&[None, Some(1)])),
        ("0", PartialBijection::empty(2)),
    ];
    relabel(s, &named)
}

/// The semilattice `0 < e`, `0 < f < g` with `e` orthogonal to `g`.
pub fn e4() -> InverseSemigroup {
    let e = PartialBijection::partial_identity(3, &[0]);
    let f = PartialBijection::partial_identity(3, &[1]);
    let g = PartialBijection::partial_identity(3, &[1, 2]);
    let gens = [e.clone(), f.clone(), g.clone()];
    let s = InverseSemigroup::from_generators(&gens, DEFAULT_ELEMENT_CAP).unwrap();
    let named = [("e", e), ("f", f), ("g", g), ("0", PartialBijection::empty(3))];
    relabel(s, &named)
}

/// The group of order two with a zero adjoined: `{0, 1, x}`.
pub fn z2_with_zero() -> InverseSemigroup {
    let one = PartialBijection::identity(2);
    let x = pb(&[Some(1), Some(0)]);
    let gens = [one.clone(), x.clone()];
    let s = InverseSemigroup::from_generators(&gens, DEFAULT_ELEMENT_CAP).unwrap();
    let named = [("1", one), ("x", x), ("0", PartialBijection::empty(2))];
    relabel(s, &named)
}

pub fn zero_semigroup() -> InverseSemigroup {
    InverseSemigroup::from_generators(&[PartialBijection::empty(1)], 10).unwrap()
}

/// `{0, e}`
pub fn two_element() -> InverseSemigroup {
    let e = PartialBijection::partial_identity(2, &[0]);
    let gens = [e.clone(), PartialBijection::empty(2)];
    let s = InverseSemigroup::from_generators(&gens, 10).unwrap();
    relabel(s, &[("e", e), ("0", PartialBijection::empty(2))])
}

/// The chain `0 < a < b`.
pub fn chain3() -> InverseSemigroup {
    let a = PartialBijection::partial_identity(2, &[0]);
    let b = PartialBijection::identity(2);
    let gens = [a.clone(), b.clone(), PartialBijection::empty(2)];
    let s = InverseSemigroup::from_generators(&gens, 10).unwrap();
    relabel(s, &[("a", a), ("b", b), ("0", PartialBijection::empty(2))])
}

/// Symmetric inverse monoid on `n` points.
pub fn symmetric_inverse_monoid(n: usize) -> InverseSemigroup {
    let mut gens = vec![PartialBijection::identity(n)];
    if n >= 2 {
        let mut swap: Vec<Option<usize>> = (0..n).map(Some).collect();
        swap.swap(0, 1);
        gens.push(pb(&swap));
        let cycle: Vec<Option<usize>> = (0..n).map(|i| Some((i + 1) % n)).collect();
        gens.push(pb(&cycle));
    }
    let mut drop_first: Vec<Option<usize>> = (0..n).map(Some).collect();
    drop_first[0] = None;
    gens.push(pb(&drop_first));
    InverseSemigroup::from_generators(&gens, DEFAULT_ELEMENT_CAP).unwrap()
}

/// One vertex with a single loop `e`.
pub fn graph_l1() -> DirectedGraph {
    DirectedGraph::from_edges(1, &[("e", 0, 0)]).unwrap().with_vertex_names(&["v"])
}

/// One vertex with two loops `a`, `b`.
pub fn graph_r2() -> DirectedGraph {
    DirectedGraph::from_edges(1, &[("a", 0, 0), ("b", 0, 0)])
        .unwrap()
        .with_vertex_names(&["v"])
}

/// `u --x--> v`, vertices `u = 0`, `v = 1`.
pub fn graph_a2() -> DirectedGraph {
    DirectedGraph::from_edges(2, &[("x", 0, 1)]).unwrap().with_vertex_names(&["u", "v"])
}

/// Two parallel edges `u ==> v`.
pub fn graph_p2() -> DirectedGraph {
    DirectedGraph::from_edges(2, &[("e", 0, 1), ("f", 0, 1)])
        .unwrap()
        .with_vertex_names(&["u", "v"])
}

/// A single vertex and no edges.
pub fn graph_point() -> DirectedGraph {
    DirectedGraph::from_edges(1, &[]).unwrap()
}

/// Further small graphs used by the corpus, with their names.
pub fn assorted_graphs() -> Vec<(&'static str, DirectedGraph)> {
    let g = |n: usize, edges: &[(&str, usize, usize)]| DirectedGraph::from_edges(n, edges).unwrap();
    vec![
        // two-cycle with an entrance from a loop
        ("cycle2-entry", g(2, &[("a", 0, 1), ("b", 1, 0), ("c", 0, 0)])),
        // bare two-cycle
        ("cycle2", g(2, &[("a", 0, 1), ("b", 1, 0)])),
        // two loops at one vertex feeding a sink
        ("rose-tail", g(2, &[("a", 0, 0), ("b", 0, 0), ("t", 0, 1)])),
        // loop feeding a second loop
        ("loop-loop", g(2, &[("a", 0, 0), ("t", 0, 1), ("b", 1, 1)])),
        // acyclic diamond
        ("diamond", g(4, &[("p", 0, 1), ("q", 0, 2), ("r", 1, 3), ("s", 2, 3)])),
        // acyclic path of length two
        ("path3", g(3, &[("x", 0, 1), ("y", 1, 2)])),
        // vertex with two loops and a return path
        ("theta", g(3, &[("a", 0, 1), ("b", 1, 0), ("c", 0, 2), ("d", 2, 0)])),
        // acyclic fan-in with a long and a short route
        ("fan", g(3, &[("x", 0, 1), ("y", 1, 2), ("z", 0, 2)])),
    ]
}

/// `Z/2 = {1, t}` acting on R2 by swapping the loops, with `φ(t, ·) = t`.
pub fn mirror() -> SelfSimilarAction {
    SelfSimilarAction::new(
        cyclic_group(2),
        graph_r2(),
        vec![vec![0], vec![0]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 0], vec![1, 1]],
    )
    .unwrap()
    .with_group_names(vec!["1", "t"])
}

/// `Z/2` acting trivially on R2 with trivial cocycle.
pub fn trivial_z2_on_r2() -> SelfSimilarAction {
    SelfSimilarAction::new(
        cyclic_group(2),
        graph_r2(),
        vec![vec![0], vec![0]],
        vec![vec![0, 1], vec![0, 1]],
        vec![vec![0, 0], vec![0, 0]],
    )
    .unwrap()
    .with_group_names(vec!["1", "t"])
}

/// `Z/2` swapping the two sources of `u1 --a--> v <--b-- u2`, with `φ(t, ·) = t`.
pub fn swap() -> SelfSimilarAction {
    let graph = DirectedGraph::from_edges(3, &[("a", 0, 2), ("b", 1, 2)]).unwrap();
    SelfSimilarAction::new(
        cyclic_group(2),
        graph,
        vec![vec![0, 1, 2], vec![1, 0, 2]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 0], vec![1, 1]],
    )
    .unwrap()
    .with_group_names(vec!["1", "t"])
}

/// Multiplication table of `Z/n` with identity `0`.
pub fn cyclic_group(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}
