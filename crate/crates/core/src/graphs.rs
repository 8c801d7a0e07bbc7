//! Finite directed graphs and their truncated graph inverse semigroups.
//!
//! Paths are written right to left: `α = α_n ⋯ α_1` with `s_{α_{i+1}} = r_{α_i}`,
//! so the edge vector of a path starts at the range end. Concatenation `αβ`
//! requires `s_α = r_β`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{Elem, InverseSemigroup};
use crate::Verdict;

/// Vertex count above which subset enumeration refuses to run.
pub const MAX_ENUMERATED_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub rng: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Name {
    Index(usize),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VertexSpec {
    Count(usize),
    Names(Vec<String>),
}

#[derive(Deserialize)]
struct EdgeSpec {
    id: Name,
    src: Name,
    rng: Name,
}

#[derive(Deserialize)]
struct GraphSpec {
    vertices: VertexSpec,
    edges: Vec<EdgeSpec>,
}

impl DirectedGraph {
    /// Vertices are named `v0, v1, …`; edges are `(id, src, rng)`.
    pub fn from_edges(n: usize, edges: &[(&str, usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|v| format!("v{v}")).collect();
        let edges = edges
            .iter()
            .map(|&(id, src, rng)| Edge {
                id: id.to_string(),
                src,
                rng,
            })
            .collect();
        Self::new(vertices, edges)
    }

    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let n = vertices.len();
        for e in &edges {
            if e.src >= n || e.rng >= n {
                return Err(Error::DanglingEndpoint { edge: e.id.clone() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::Parse(format!("duplicate edge id {}", e.id)));
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Parses `{"vertices": n | [names], "edges": [{"id", "src", "rng"}]}`.
    /// Endpoints may be vertex indices or names.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(spec)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(spec)
    }

    fn from_value(spec: GraphSpec) -> Result<Self> {
        let vertices = match spec.vertices {
            VertexSpec::Count(n) => (0..n).map(|v| format!("v{v}")).collect(),
            VertexSpec::Names(names) => names,
        };
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut edges = Vec::with_capacity(spec.edges.len());
        for e in spec.edges {
            let id = match e.id {
                Name::Index(i) => i.to_string(),
                Name::Text(t) => t,
            };
            let resolve = |n: &Name| match n {
                Name::Index(i) => Some(*i),
                Name::Text(t) => index.get(t.as_str()).copied(),
            };
            let (Some(src), Some(rng)) = (resolve(&e.src), resolve(&e.rng)) else {
                return Err(Error::DanglingEndpoint { edge: id });
            };
            edges.push(Edge { id, src, rng });
        }
        Self::new(vertices, edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "id": e.id, "src": e.src, "rng": e.rng
            })).collect::<Vec<_>>(),
        })
    }

    pub fn with_vertex_names(mut self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.vertices.len());
        self.vertices = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn src(&self, e: usize) -> usize {
        self.edges[e].src
    }

    pub fn rng(&self, e: usize) -> usize {
        self.edges[e].rng
    }

    pub fn find_edge(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn find_vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Edges with range `v`.
    pub fn in_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].rng == v).collect()
    }

    /// Edges with source `v`.
    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].src == v).collect()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.rng == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.src == v).count()
    }

    /// Vertices reachable from `v` by a path of length ≥ 0, following edges
    /// from source to range.
    pub fn reachable_from(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(x) = queue.pop_front() {
            for e in &self.edges {
                if e.src == x && !seen[e.rng] {
                    seen[e.rng] = true;
                    queue.push_back(e.rng);
                }
            }
        }
        seen
    }

    /// Length of the longest path, or `None` when there is a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let n = self.num_vertices();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut depth = vec![0usize; n];
        let mut done = 0;
        while let Some(v) = queue.pop_front() {
            done += 1;
            for e in self.out_edges(v) {
                let w = self.rng(e);
                depth[w] = depth[w].max(depth[v] + 1);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (done == n).then(|| depth.into_iter().max().unwrap_or(0))
    }

    pub fn is_acyclic(&self) -> bool {
        self.longest_path().is_some()
    }

    /// Vertices receiving no edge and vertices emitting none.
    pub fn sources_and_sinks(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.num_vertices();
        (
            (0..n).filter(|&v| self.in_degree(v) == 0).collect(),
            (0..n).filter(|&v| self.out_degree(v) == 0).collect(),
        )
    }

    /// Simple cycles as edge lists, each listed once starting from its least
    /// vertex, in traversal order. Stops after `cap` cycles.
    pub fn simple_cycles(&self, cap: usize) -> Vec<Vec<usize>> {
        fn go(
            g: &DirectedGraph,
            start: usize,
            v: usize,
            on_path: &mut Vec<bool>,
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            cap: usize,
        ) {
            for e in g.out_edges(v) {
                if out.len() >= cap {
                    return;
                }
                let w = g.rng(e);
                if w == start {
                    let mut c = path.clone();
                    c.push(e);
                    out.push(c);
                } else if w > start && !on_path[w] {
                    on_path[w] = true;
                    path.push(e);
                    go(g, start, w, on_path, path, out, cap);
                    path.pop();
                    on_path[w] = false;
                }
            }
        }
        let mut out = Vec::new();
        for start in 0..self.num_vertices() {
            let mut on_path = vec![false; self.num_vertices()];
            on_path[start] = true;
            go(self, start, start, &mut on_path, &mut Vec::new(), &mut out, cap);
        }
        out
    }

    /// A cycle none of whose vertices receives an edge from outside the cycle.
    /// Such a cycle is simple and every vertex on it has in-degree one, so it
    /// is found by walking back along unique incoming edges.
    pub fn cycle_without_entrance(&self) -> Option<Vec<usize>> {
        let n = self.num_vertices();
        for v in 0..n {
            let mut walk = Vec::new();
            let mut x = v;
            for _ in 0..n {
                let ins = self.in_edges(x);
                if ins.len() != 1 {
                    break;
                }
                walk.push(ins[0]);
                x = self.src(ins[0]);
                if x == v {
                    // collected range-first going backwards; report in traversal order
                    walk.reverse();
                    return Some(walk);
                }
            }
        }
        None
    }

    /// Number of first-return paths at `v`, saturating at 2: closed paths at
    /// `v` that do not pass through `v` in between.
    pub fn first_return_count(&self, v: usize) -> usize {
        let n = self.num_vertices();
        let loops = self.edges.iter().filter(|e| e.src == v && e.rng == v).count();
        // forward reach from v and backward reach to v, both avoiding v
        let mut fwd = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for e in self.out_edges(v) {
            let w = self.rng(e);
            if w != v && !fwd[w] {
                fwd[w] = true;
                queue.push_back(w);
            }
        }
        while let Some(x) = queue.pop_front() {
            for e in self.out_edges(x) {
                let w = self.rng(e);
                if w != v && !fwd[w] {
                    fwd[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut bwd = vec![false; n];
        for e in self.in_edges(v) {
            let w = self.src(e);
            if w != v && !bwd[w] {
                bwd[w] = true;
                queue.push_back(w);
            }
        }
        while let Some(x) = queue.pop_front() {
            for e in self.in_edges(x) {
                let w = self.src(e);
                if w != v && !bwd[w] {
                    bwd[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let relevant: Vec<bool> = (0..n).map(|w| fwd[w] && bwd[w]).collect();
        // topological order of the relevant subgraph; a cycle there gives infinitely many
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            if relevant[e.src] && relevant[e.rng] {
                indeg[e.rng] += 1;
            }
        }
        let mut order = Vec::new();
        let mut queue: VecDeque<usize> = (0..n).filter(|&w| relevant[w] && indeg[w] == 0).collect();
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for e in self.out_edges(x) {
                let w = self.rng(e);
                if relevant[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        if order.len() < relevant.iter().filter(|&&r| r).count() {
            return 2;
        }
        let mut ways = vec![0usize; n];
        for &x in &order {
            let mut w = self.edges.iter().filter(|e| e.src == v && e.rng == x).count();
            for e in self.in_edges(x) {
                if relevant[self.src(e)] {
                    w += ways[self.src(e)];
                }
            }
            ways[x] = w.min(2);
        }
        let back: usize = self
            .in_edges(v)
            .into_iter()
            .filter(|&e| relevant[self.src(e)])
            .map(|e| ways[self.src(e)])
            .sum();
        (loops + back).min(2)
    }

    /// Condition (L): every cycle has an entrance. Witness: a cycle without one.
    pub fn condition_l(&self) -> Verdict<Vec<String>> {
        Verdict::from_failure(self.cycle_without_entrance().map(|c| self.edge_ids(&c)))
    }

    /// Condition (K): no vertex is the base of exactly one first-return path.
    pub fn condition_k(&self) -> Verdict<String> {
        Verdict::from_failure(
            (0..self.num_vertices())
                .find(|&v| self.first_return_count(v) == 1)
                .map(|v| self.vertices[v].clone()),
        )
    }

    /// Condition (M): each edge `e` has a nontrivial path from `s_e` to `r_e`
    /// whose range-end edge is not `e`. Such a path ends in some `f ≠ e` with
    /// `r_f = r_e` and `s_f` reachable from `s_e`.
    pub fn condition_m(&self) -> Verdict<String> {
        let failing = (0..self.num_edges()).find(|&e| {
            let reach = self.reachable_from(self.src(e));
            !(0..self.num_edges()).any(|f| f != e && self.rng(f) == self.rng(e) && reach[self.src(f)])
        });
        Verdict::from_failure(failing.map(|e| self.edges[e].id.clone()))
    }

    pub fn conditions(&self) -> GraphConditions {
        GraphConditions {
            l: self.condition_l(),
            k: self.condition_k(),
            m: self.condition_m(),
        }
    }

    fn edge_ids(&self, edges: &[usize]) -> Vec<String> {
        edges.iter().map(|&e| self.edges[e].id.clone()).collect()
    }

    /// `r_e ∈ H` implies `s_e ∈ H`. Witness: an offending edge.
    pub fn hereditary_violation(&self, member: &[bool]) -> Option<usize> {
        (0..self.num_edges()).find(|&e| member[self.rng(e)] && !member[self.src(e)])
    }

    /// Every vertex that receives edges, all from `H`, lies in `H`.
    pub fn is_saturated(&self, member: &[bool]) -> bool {
        (0..self.num_vertices()).all(|v| {
            let ins = self.in_edges(v);
            member[v] || ins.is_empty() || ins.iter().any(|&e| !member[self.src(e)])
        })
    }

    /// Every hereditary set, in order of bitmask, with its saturation flag.
    pub fn hereditary_sets(&self) -> Result<Vec<HereditarySet>> {
        let n = self.num_vertices();
        if n > MAX_ENUMERATED_VERTICES {
            return Err(Error::TooLarge {
                what: "hereditary set enumeration",
                size: n,
                bound: MAX_ENUMERATED_VERTICES,
            });
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let member: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            if self.hereditary_violation(&member).is_none() {
                out.push(HereditarySet {
                    vertices: (0..n).filter(|&v| member[v]).collect(),
                    saturated: self.is_saturated(&member),
                });
            }
        }
        Ok(out)
    }

    /// `Λ \ V`: drop `V` and every edge touching it. `V` must be hereditary.
    /// Also returns the new index of each surviving vertex.
    pub fn quotient_graph(&self, v: &[usize]) -> Result<(DirectedGraph, Vec<Option<usize>>)> {
        let mut member = vec![false; self.num_vertices()];
        for &x in v {
            member[x] = true;
        }
        if let Some(e) = self.hereditary_violation(&member) {
            return Err(Error::NotHereditary {
                edge: self.edges[e].id.clone(),
            });
        }
        let mut new_index = vec![None; self.num_vertices()];
        let mut vertices = Vec::new();
        for x in 0..self.num_vertices() {
            if !member[x] {
                new_index[x] = Some(vertices.len());
                vertices.push(self.vertices[x].clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| !member[e.src] && !member[e.rng])
            .map(|e| Edge {
                id: e.id.clone(),
                src: new_index[e.src].unwrap(),
                rng: new_index[e.rng].unwrap(),
            })
            .collect();
        Ok((Self::new(vertices, edges)?, new_index))
    }

    /// (M) recomputed from quotients: no `Λ \ V` with `V` hereditary has a
    /// vertex of in-degree one.
    pub fn condition_m_by_quotients(&self) -> Result<bool> {
        for h in self.hereditary_sets()? {
            let (q, _) = self.quotient_graph(&h.vertices)?;
            if (0..q.num_vertices()).any(|v| q.in_degree(v) == 1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// (K) recomputed from quotients: `Λ \ H` satisfies (L) for every saturated
    /// hereditary `H`.
    pub fn condition_k_by_quotients(&self) -> Result<bool> {
        for h in self.hereditary_sets()?.into_iter().filter(|h| h.saturated) {
            if !self.quotient_graph(&h.vertices)?.0.condition_l().holds {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All paths of length at most `depth`, shortest first.
    pub fn paths_up_to(&self, depth: usize) -> Vec<GraphPath> {
        let mut out: Vec<GraphPath> = (0..self.num_vertices()).map(GraphPath::vertex).collect();
        let mut layer = out.clone();
        for _ in 0..depth {
            let mut next = Vec::new();
            for p in &layer {
                for e in self.in_edges(p.source) {
                    next.push(p.extend_at_source(self, e));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Paths starting at `v` (source `v`) of length at most `depth`.
    pub fn paths_from(&self, v: usize, depth: usize) -> Vec<GraphPath> {
        let mut out = vec![GraphPath::vertex(v)];
        let mut layer = out.clone();
        for _ in 0..depth {
            let mut next = Vec::new();
            for p in &layer {
                for e in self.out_edges(p.range) {
                    let mut edges = vec![e];
                    edges.extend_from_slice(&p.edges);
                    next.push(GraphPath {
                        edges,
                        source: p.source,
                        range: self.rng(e),
                    });
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn summary(&self) -> GraphSummary {
        let (sources, sinks) = self.sources_and_sinks();
        GraphSummary {
            vertices: self.num_vertices(),
            edges: self.num_edges(),
            in_degrees: (0..self.num_vertices()).map(|v| self.in_degree(v)).collect(),
            acyclic: self.is_acyclic(),
            longest_path: self.longest_path(),
            vertices_receiving_no_edge: sources.into_iter().map(|v| self.vertices[v].clone()).collect(),
            vertices_emitting_no_edge: sinks.into_iter().map(|v| self.vertices[v].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub in_degrees: Vec<usize>,
    pub acyclic: bool,
    pub longest_path: Option<usize>,
    pub vertices_receiving_no_edge: Vec<String>,
    pub vertices_emitting_no_edge: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphConditions {
    pub l: Verdict<Vec<String>>,
    pub k: Verdict<String>,
    pub m: Verdict<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HereditarySet {
    pub vertices: Vec<usize>,
    pub saturated: bool,
}

/// A path `α_n ⋯ α_1`; `edges[0] = α_n` is the range-end edge. A vertex is a
/// path of length zero with no edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphPath {
    pub edges: Vec<usize>,
    pub source: usize,
    pub range: usize,
}

impl GraphPath {
    pub fn vertex(v: usize) -> Self {
        Self {
            edges: Vec::new(),
            source: v,
            range: v,
        }
    }

    pub fn edge(g: &DirectedGraph, e: usize) -> Self {
        Self {
            edges: vec![e],
            source: g.src(e),
            range: g.rng(e),
        }
    }

    /// Builds and validates a path from edges listed range end first.
    pub fn from_edges(g: &DirectedGraph, edges: Vec<usize>) -> Result<Self> {
        let Some((&top, _)) = edges.split_first() else {
            return Err(Error::Parse("use GraphPath::vertex for empty paths".into()));
        };
        for w in edges.windows(2) {
            if g.src(w[0]) != g.rng(w[1]) {
                return Err(Error::Parse(format!(
                    "edges {} and {} do not compose",
                    g.edge(w[0]).id,
                    g.edge(w[1]).id
                )));
            }
        }
        let last = *edges.last().unwrap();
        Ok(Self {
            range: g.rng(top),
            source: g.src(last),
            edges,
        })
    }

    /// Parses edge ids separated by `.` or a single vertex name; single-char
    /// edge ids may also be run together, as in `ab`.
    pub fn parse(g: &DirectedGraph, text: &str) -> Result<Self> {
        if let Some(v) = g.find_vertex(text) {
            return Ok(Self::vertex(v));
        }
        let parts: Vec<String> = if text.contains('.') {
            text.split('.').map(str::to_string).collect()
        } else if let Some(e) = g.find_edge(text) {
            vec![g.edge(e).id.clone()]
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        let edges = parts
            .iter()
            .map(|p| g.find_edge(p).ok_or_else(|| Error::Parse(format!("unknown edge {p}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(g, edges)
    }

    #[allow(clippy::len_without_is_empty)] // a length-zero path is a vertex, see `is_vertex`
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self · e` with `r_e = s_self`.
    pub fn extend_at_source(&self, g: &DirectedGraph, e: usize) -> Self {
        debug_assert_eq!(g.rng(e), self.source);
        let mut edges = self.edges.clone();
        edges.push(e);
        Self {
            edges,
            source: g.src(e),
            range: self.range,
        }
    }

    /// `αβ`, defined when `s_α = r_β`.
    pub fn concat(&self, other: &Self) -> Option<Self> {
        if self.source != other.range {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Self {
            edges,
            source: other.source,
            range: self.range,
        })
    }

    /// `γ'` with `self = prefix · γ'`, if `prefix` is an initial segment from
    /// the range end.
    pub fn strip_prefix(&self, prefix: &Self) -> Option<Self> {
        if self.range != prefix.range || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Self {
            edges: self.edges[prefix.len()..].to_vec(),
            source: self.source,
            range: prefix.source,
        })
    }

    pub fn display(&self, g: &DirectedGraph) -> String {
        if self.edges.is_empty() {
            return g.vertex_name(self.source).to_string();
        }
        let ids: Vec<&str> = self.edges.iter().map(|&e| g.edge(e).id.as_str()).collect();
        if ids.iter().all(|id| id.chars().count() == 1) {
            ids.concat()
        } else {
            ids.join(".")
        }
    }
}

const OVERFLOW: usize = usize::MAX;

/// `S_Λ` restricted to pairs of paths of length at most `depth`. Products whose
/// result leaves the window are marked and reported as [`Error::Overflow`].
#[derive(Debug, Clone)]
pub struct TruncatedGraphSemigroup {
    graph: DirectedGraph,
    depth: usize,
    paths: Vec<GraphPath>,
    /// Element 0 is zero; element `i ≥ 1` is `pairs[i - 1]`.
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), Elem>,
    mul: Vec<usize>,
}

/// The product of `(α, β)(γ, ν)` in the full graph inverse semigroup, or
/// `None` for zero.
pub fn pair_product(
    a: (&GraphPath, &GraphPath),
    b: (&GraphPath, &GraphPath),
) -> Option<(GraphPath, GraphPath)> {
    let ((alpha, beta), (gamma, nu)) = (a, b);
    if let Some(rest) = gamma.strip_prefix(beta) {
        return Some((alpha.concat(&rest).expect("s_α = s_β = r_γ'"), nu.clone()));
    }
    if let Some(rest) = beta.strip_prefix(gamma) {
        return Some((alpha.clone(), nu.concat(&rest).expect("s_ν = s_γ = r_β'")));
    }
    None
}

impl TruncatedGraphSemigroup {
    pub fn new(graph: &DirectedGraph, depth: usize) -> Result<Self> {
        let paths = graph.paths_up_to(depth);
        let path_index: HashMap<&GraphPath, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut pairs = Vec::new();
        for (i, a) in paths.iter().enumerate() {
            for (j, b) in paths.iter().enumerate() {
                if a.source == b.source {
                    pairs.push((i, j));
                }
            }
        }
        let n = pairs.len() + 1;
        if n > crate::semigroup::DEFAULT_ELEMENT_CAP {
            return Err(Error::CapExceeded {
                cap: crate::semigroup::DEFAULT_ELEMENT_CAP,
            });
        }
        let index: HashMap<(usize, usize), Elem> = pairs.iter().enumerate().map(|(k, &p)| (p, k + 1)).collect();
        let mut mul = vec![0; n * n];
        for x in 1..n {
            let (a, b) = pairs[x - 1];
            for y in 1..n {
                let (c, d) = pairs[y - 1];
                mul[x * n + y] = match pair_product((&paths[a], &paths[b]), (&paths[c], &paths[d])) {
                    None => 0,
                    Some((p, q)) => match (path_index.get(&p), path_index.get(&q)) {
                        (Some(&i), Some(&j)) => index[&(i, j)],
                        _ => OVERFLOW,
                    },
                };
            }
        }
        Ok(Self {
            graph: graph.clone(),
            depth,
            paths,
            pairs,
            index,
            mul,
        })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.pairs.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The pair of paths behind a nonzero element.
    pub fn pair(&self, x: Elem) -> Option<(&GraphPath, &GraphPath)> {
        let &(a, b) = self.pairs.get(x.checked_sub(1)?)?;
        Some((&self.paths[a], &self.paths[b]))
    }

    pub fn find(&self, alpha: &GraphPath, beta: &GraphPath) -> Option<Elem> {
        let i = self.paths.iter().position(|p| p == alpha)?;
        let j = self.paths.iter().position(|p| p == beta)?;
        self.index.get(&(i, j)).copied()
    }

    pub fn multiply(&self, x: Elem, y: Elem) -> Result<Elem> {
        match self.mul[x * self.len() + y] {
            OVERFLOW => Err(Error::Overflow { depth: self.depth }),
            z => Ok(z),
        }
    }

    pub fn inverse(&self, x: Elem) -> Elem {
        match self.pairs.get(x.wrapping_sub(1)) {
            None => 0,
            Some(&(a, b)) => self.index[&(b, a)],
        }
    }

    /// No product leaves the window.
    pub fn is_exact(&self) -> bool {
        !self.mul.contains(&OVERFLOW)
    }

    pub fn label(&self, x: Elem) -> String {
        match self.pair(x) {
            None => "0".into(),
            Some((a, b)) => format!("({},{})", a.display(&self.graph), b.display(&self.graph)),
        }
    }

    /// The exact semigroup, when no product overflows.
    pub fn to_inverse_semigroup(&self) -> Result<InverseSemigroup> {
        if !self.is_exact() {
            return Err(Error::Overflow { depth: self.depth });
        }
        let n = self.len();
        let inv = (0..n).map(|x| self.inverse(x)).collect();
        let labels = (0..n).map(|x| self.label(x)).collect();
        let s = InverseSemigroup::from_parts(self.mul.clone(), inv, 0, labels);
        s.validate()?;
        Ok(s)
    }
}

/// Exact graph inverse semigroup of an acyclic graph, with the pair behind
/// each element.
pub fn exact_graph_semigroup(graph: &DirectedGraph) -> Result<(InverseSemigroup, TruncatedGraphSemigroup)> {
    let depth = graph.longest_path().ok_or(Error::Overflow { depth: 0 })?;
    let t = TruncatedGraphSemigroup::new(graph, depth.max(1))?;
    Ok((t.to_inverse_semigroup()?, t))
}

/// Paths whose source receives no edge, which index the tight units of an
/// exact graph semigroup.
pub fn maximal_path_count(graph: &DirectedGraph) -> Option<usize> {
    let depth = graph.longest_path()?;
    Some(
        graph
            .paths_up_to(depth)
            .iter()
            .filter(|p| graph.in_degree(p.source) == 0)
            .count(),
    )
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}:{}→{}", e.id, self.vertices[e.src], self.vertices[e.rng]))
            .collect();
        write!(f, "{} vertices; {}", self.vertices.len(), edges.join(", "))
    }
}
