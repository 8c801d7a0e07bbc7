//! Self-similar actions of finite groups on finite graphs.
//!
//! The action on a path handles its range-end edge first:
//! `g(eβ) = (ge)·φ(g, e)β` and `φ(g, eβ) = φ(φ(g, e), β)`.

mod conditions;
mod triples;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{DirectedGraph, GraphPath};

pub use conditions::{
    all_rees_ss, check_condition_m_quotients, check_ideal_correspondence, check_mu_characterization,
    check_quotient_isomorphism, condition_m_ss, condition_m_ss_by_quotients, faithfulness, strongly_fixed_finite, AllReesSs, Faithfulness,
    Hypotheses,
};
pub use triples::{exact_ss_semigroup, SsTriple, TruncatedSsSemigroup};

/// Depth to which path-level axioms are checked by default.
pub const DEFAULT_VALIDATION_DEPTH: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfSimilarAction {
    /// Multiplication table; element 0 is the identity.
    group: Vec<Vec<usize>>,
    group_names: Vec<String>,
    #[serde(skip)]
    inverse: Vec<usize>,
    graph: DirectedGraph,
    /// `vertex_action[g][v] = gv`
    vertex_action: Vec<Vec<usize>>,
    /// `edge_action[g][e] = ge`
    edge_action: Vec<Vec<usize>>,
    /// `cocycle[g][e] = φ(g, e)`
    cocycle: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct ActionSpec {
    group: Vec<Vec<usize>>,
    #[serde(default)]
    group_names: Option<Vec<String>>,
    graph: serde_json::Value,
    vertex_action: Vec<Vec<usize>>,
    edge_action: Vec<Vec<usize>>,
    cocycle: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub depth: usize,
    pub paths_checked: usize,
    pub group_order: usize,
}

fn violation(axiom: &'static str, witness: String) -> Error {
    Error::AxiomViolation { axiom, witness }
}

impl SelfSimilarAction {
    /// Builds the action and validates every axiom to the default depth.
    pub fn new(
        group: Vec<Vec<usize>>,
        graph: DirectedGraph,
        vertex_action: Vec<Vec<usize>>,
        edge_action: Vec<Vec<usize>>,
        cocycle: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let a = Self::unchecked(group, graph, vertex_action, edge_action, cocycle)?;
        a.validate_action(DEFAULT_VALIDATION_DEPTH)?;
        Ok(a)
    }

    /// Checks table shapes and the group, but none of the action axioms.
    pub fn unchecked(
        group: Vec<Vec<usize>>,
        graph: DirectedGraph,
        vertex_action: Vec<Vec<usize>>,
        edge_action: Vec<Vec<usize>>,
        cocycle: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = group.len();
        if n == 0 {
            return Err(Error::Parse("group table is empty".into()));
        }
        let shape = |t: &Vec<Vec<usize>>, cols: usize, bound: usize, what: &str| -> Result<()> {
            if t.len() != n || t.iter().any(|r| r.len() != cols || r.iter().any(|&x| x >= bound)) {
                return Err(Error::Parse(format!("{what} table must be {n}×{cols} with entries below {bound}")));
            }
            Ok(())
        };
        shape(&group, n, n, "group")?;
        shape(&vertex_action, graph.num_vertices(), graph.num_vertices(), "vertex action")?;
        shape(&edge_action, graph.num_edges(), graph.num_edges(), "edge action")?;
        shape(&cocycle, graph.num_edges(), n, "cocycle")?;
        for g in 0..n {
            if group[0][g] != g || group[g][0] != g {
                return Err(Error::Parse("element 0 must be the group identity".into()));
            }
            for h in 0..n {
                for k in 0..n {
                    if group[group[g][h]][k] != group[g][group[h][k]] {
                        return Err(Error::Parse(format!("group table is not associative at ({g},{h},{k})")));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for (g, row) in group.iter().enumerate() {
            let Some(h) = (0..n).find(|&h| row[h] == 0 && group[h][g] == 0) else {
                return Err(Error::Parse(format!("group element {g} has no inverse")));
            };
            inverse.push(h);
        }
        let group_names = (0..n)
            .map(|g| if g == 0 { "1".to_string() } else { format!("g{g}") })
            .collect();
        Ok(Self {
            group,
            group_names,
            inverse,
            graph,
            vertex_action,
            edge_action,
            cocycle,
        })
    }

    /// The trivial group acting on a graph.
    pub fn trivial(graph: DirectedGraph) -> Self {
        let nv = graph.num_vertices();
        let ne = graph.num_edges();
        Self::new(vec![vec![0]], graph, vec![(0..nv).collect()], vec![(0..ne).collect()], vec![vec![0; ne]])
            .expect("the trivial action satisfies every axiom")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ActionSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let graph = DirectedGraph::from_json_value(&spec.graph)?;
        let a = Self::new(spec.group, graph, spec.vertex_action, spec.edge_action, spec.cocycle)?;
        match spec.group_names {
            Some(names) if names.len() == a.order() => Ok(a.with_group_names(names)),
            Some(_) => Err(Error::Parse("group_names has the wrong length".into())),
            None => Ok(a),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group,
            "group_names": self.group_names,
            "graph": self.graph.to_json(),
            "vertex_action": self.vertex_action,
            "edge_action": self.edge_action,
            "cocycle": self.cocycle,
        })
    }

    pub fn with_group_names<S: Into<String>>(mut self, names: Vec<S>) -> Self {
        assert_eq!(names.len(), self.order());
        self.group_names = names.into_iter().map(Into::into).collect();
        self
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.group.len()
    }

    pub fn group_name(&self, g: usize) -> &str {
        &self.group_names[g]
    }

    pub fn find_group_element(&self, name: &str) -> Option<usize> {
        self.group_names.iter().position(|n| n == name)
    }

    pub fn op(&self, g: usize, h: usize) -> usize {
        self.group[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        self.vertex_action[g][v]
    }

    pub fn act_edge(&self, g: usize, e: usize) -> usize {
        self.edge_action[g][e]
    }

    pub fn phi(&self, g: usize, e: usize) -> usize {
        self.cocycle[g][e]
    }

    /// `(gα, φ(g, α))`; a vertex `x` gives `(gx, g)`.
    pub fn act_on_path(&self, g: usize, alpha: &GraphPath) -> (GraphPath, usize) {
        if alpha.is_vertex() {
            let x = self.act_vertex(g, alpha.source);
            return (GraphPath::vertex(x), g);
        }
        let mut h = g;
        let mut edges = Vec::with_capacity(alpha.len());
        for &e in &alpha.edges {
            edges.push(self.act_edge(h, e));
            h = self.phi(h, e);
        }
        let range = self.graph.rng(edges[0]);
        let source = self.graph.src(*edges.last().unwrap());
        (GraphPath { edges, source, range }, h)
    }

    /// Orbit index of each vertex; orbits are numbered by least member.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let n = self.graph.num_vertices();
        let mut orbit = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if orbit[v] == usize::MAX {
                for g in 0..self.order() {
                    orbit[self.act_vertex(g, v)] = next;
                }
                next += 1;
            }
        }
        orbit
    }

    pub fn is_invariant(&self, set: &[usize]) -> bool {
        let member = self.membership(set);
        set.iter().all(|&v| (0..self.order()).all(|g| member[self.act_vertex(g, v)]))
    }

    fn membership(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.graph.num_vertices()];
        for &v in set {
            m[v] = true;
        }
        m
    }

    /// Checks every axiom on group elements, vertices, edges, and on all paths
    /// of length at most `depth`, stopping at the first violation.
    pub fn validate_action(&self, depth: usize) -> Result<ValidationReport> {
        let g_all = 0..self.order();
        let gr = &self.graph;
        let name = |g: usize| self.group_name(g).to_string();
        for g in g_all.clone() {
            for h in g_all.clone() {
                let gh = self.op(g, h);
                for v in 0..gr.num_vertices() {
                    if self.act_vertex(gh, v) != self.act_vertex(g, self.act_vertex(h, v)) {
                        return Err(violation("E1", format!("g={}, h={}, x={}", name(g), name(h), gr.vertex_name(v))));
                    }
                }
                for e in 0..gr.num_edges() {
                    if self.act_edge(gh, e) != self.act_edge(g, self.act_edge(h, e)) {
                        return Err(violation("E1", format!("g={}, h={}, e={}", name(g), name(h), gr.edge(e).id)));
                    }
                }
            }
        }
        for v in 0..gr.num_vertices() {
            if self.act_vertex(0, v) != v {
                return Err(violation("E1", format!("identity moves {}", gr.vertex_name(v))));
            }
        }
        for e in 0..gr.num_edges() {
            if self.act_edge(0, e) != e {
                return Err(violation("E1", format!("identity moves {}", gr.edge(e).id)));
            }
        }
        let paths = gr.paths_up_to(depth);
        for alpha in &paths {
            let shown = alpha.display(gr);
            for g in g_all.clone() {
                let (ga, phi_ga) = self.act_on_path(g, alpha);
                if alpha.is_vertex() && phi_ga != g {
                    return Err(violation("E3", format!("g={}, x={shown}", name(g))));
                }
                if ga.len() != alpha.len() {
                    return Err(violation("E7", format!("g={}, α={shown} changes length", name(g))));
                }
                for w in ga.edges.windows(2) {
                    if gr.src(w[0]) != gr.rng(w[1]) {
                        return Err(violation("E6", format!("g={}, α={shown} is not sent to a path", name(g))));
                    }
                }
                if ga.range != self.act_vertex(g, alpha.range) {
                    return Err(violation("E4", format!("g={}, α={shown}", name(g))));
                }
                if ga.source != self.act_vertex(g, alpha.source) {
                    return Err(violation("E5", format!("g={}, α={shown}", name(g))));
                }
                for x in 0..gr.num_vertices() {
                    if self.act_vertex(phi_ga, x) != self.act_vertex(g, x) {
                        return Err(violation("E6", format!("g={}, α={shown}, x={}", name(g), gr.vertex_name(x))));
                    }
                }
                for h in g_all.clone() {
                    let gh = self.op(g, h);
                    let (ha, phi_ha) = self.act_on_path(h, alpha);
                    let (g_ha, phi_g_ha) = self.act_on_path(g, &ha);
                    let (gh_a, phi_gh_a) = self.act_on_path(gh, alpha);
                    if gh_a != g_ha {
                        return Err(violation("E1", format!("g={}, h={}, α={shown}", name(g), name(h))));
                    }
                    if phi_gh_a != self.op(phi_g_ha, phi_ha) {
                        return Err(violation("E2", format!("g={}, h={}, α={shown}", name(g), name(h))));
                    }
                }
                // every split α = βγ
                for k in 0..=alpha.len() {
                    let (beta, gamma) = split(gr, alpha, k);
                    let (gb, phi_gb) = self.act_on_path(g, &beta);
                    let (rest, phi_rest) = self.act_on_path(phi_gb, &gamma);
                    if gb.concat(&rest).as_ref() != Some(&ga) {
                        return Err(violation("E7", format!("g={}, α={shown}, split at {k}", name(g))));
                    }
                    if phi_rest != phi_ga {
                        return Err(violation("E8", format!("g={}, α={shown}, split at {k}", name(g))));
                    }
                }
            }
        }
        Ok(ValidationReport {
            depth,
            paths_checked: paths.len(),
            group_order: self.order(),
        })
    }

    /// The action restricted to `Λ \ V` for a hereditary, invariant `V`.
    pub fn quotient_action(&self, v: &[usize]) -> Result<SelfSimilarAction> {
        if !self.is_invariant(v) {
            return Err(Error::NotInvariant(format!("vertex set {v:?} is not G-invariant")));
        }
        let (graph, vmap) = self.graph.quotient_graph(v)?;
        let kept_edges: Vec<usize> = (0..self.graph.num_edges())
            .filter(|&e| vmap[self.graph.src(e)].is_some() && vmap[self.graph.rng(e)].is_some())
            .collect();
        let mut emap = vec![None; self.graph.num_edges()];
        for (i, &e) in kept_edges.iter().enumerate() {
            emap[e] = Some(i);
        }
        let kept_vertices: Vec<usize> = (0..self.graph.num_vertices()).filter(|&x| vmap[x].is_some()).collect();
        let vertex_action = (0..self.order())
            .map(|g| kept_vertices.iter().map(|&x| vmap[self.act_vertex(g, x)].unwrap()).collect())
            .collect();
        let edge_action = (0..self.order())
            .map(|g| {
                kept_edges
                    .iter()
                    .map(|&e| emap[self.act_edge(g, e)].expect("invariance keeps edges"))
                    .collect()
            })
            .collect();
        let cocycle = (0..self.order())
            .map(|g| kept_edges.iter().map(|&e| self.phi(g, e)).collect())
            .collect();
        let q = Self::new(self.group.clone(), graph, vertex_action, edge_action, cocycle)?;
        Ok(q.with_group_names(self.group_names.clone()))
    }

    /// Hereditary, G-invariant vertex sets.
    pub fn hereditary_invariant_sets(&self) -> Result<Vec<Vec<usize>>> {
        Ok(self
            .graph
            .hereditary_sets()?
            .into_iter()
            .map(|h| h.vertices)
            .filter(|v| self.is_invariant(v))
            .collect())
    }
}

/// Splits `α` into `β γ` with `|β| = k`.
fn split(g: &DirectedGraph, alpha: &GraphPath, k: usize) -> (GraphPath, GraphPath) {
    let beta = if k == 0 {
        GraphPath::vertex(alpha.range)
    } else {
        GraphPath::from_edges(g, alpha.edges[..k].to_vec()).expect("prefix of a path")
    };
    let gamma = if k == alpha.len() {
        GraphPath::vertex(alpha.source)
    } else {
        GraphPath::from_edges(g, alpha.edges[k..].to_vec()).expect("suffix of a path")
    };
    (beta, gamma)
}
