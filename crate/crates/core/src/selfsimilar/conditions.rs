use std::collections::HashMap;

use serde::Serialize;

use super::triples::{exact_ss_semigroup, SsTriple};
use super::SelfSimilarAction;
use crate::congruences::{all_congruences_rees, rees_quotient};
use crate::error::Result;
use crate::graphs::GraphPath;
use crate::ideals_filters::enumerate_ideals;
use crate::relations::{is_fundamental, mu, Homomorphism};
use crate::semigroup::Elem;
use crate::semilattice::Semilattice;
use crate::Verdict;

/// Standing hypotheses: every vertex receives and emits an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub no_vertex_without_incoming: bool,
    pub no_vertex_without_outgoing: bool,
}

impl Hypotheses {
    pub fn met(&self) -> bool {
        self.no_vertex_without_incoming && self.no_vertex_without_outgoing
    }
}

impl SelfSimilarAction {
    pub fn hypotheses(&self) -> Hypotheses {
        let (sources, sinks) = self.graph().sources_and_sinks();
        Hypotheses {
            no_vertex_without_incoming: sources.is_empty(),
            no_vertex_without_outgoing: sinks.is_empty(),
        }
    }

    /// `e` is G-independent when every other edge into `r_e` starts in a
    /// different orbit from `s_e`.
    pub fn is_g_independent(&self, e: usize) -> bool {
        let g = self.graph();
        let orbit = self.vertex_orbits();
        (0..g.num_edges()).all(|f| f == e || g.rng(f) != g.rng(e) || orbit[g.src(f)] != orbit[g.src(e)])
    }

    /// Greatest set of pairs `(g, v)` with `g` fixing every path with range
    /// `v`: start from `gv = v` and drop `(g, v)` while some edge `e` into `v`
    /// has `ge ≠ e` or `(φ(g, e), s_e)` already dropped.
    pub fn trivial_pairs(&self) -> Vec<Vec<bool>> {
        let gr = self.graph();
        let mut t: Vec<Vec<bool>> = (0..self.order())
            .map(|g| (0..gr.num_vertices()).map(|v| self.act_vertex(g, v) == v).collect())
            .collect();
        loop {
            let mut changed = false;
            for g in 0..self.order() {
                for v in 0..gr.num_vertices() {
                    if !t[g][v] {
                        continue;
                    }
                    let keep = gr
                        .in_edges(v)
                        .into_iter()
                        .all(|e| self.act_edge(g, e) == e && t[self.phi(g, e)][gr.src(e)]);
                    if !keep {
                        t[g][v] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                return t;
            }
        }
    }

    pub fn is_faithful(&self) -> bool {
        let t = self.trivial_pairs();
        (1..self.order()).all(|g| t[g].iter().all(|&x| !x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Faithfulness {
    pub faithful: bool,
    pub strongly_faithful: bool,
    /// Pairs `(g, v)` with `g ≠ 1` fixing every path into `v`.
    pub nontrivial_pairs: Vec<(String, String)>,
    /// A hereditary invariant set whose quotient action is not faithful.
    pub failing_set: Option<Vec<usize>>,
    pub hypotheses: Hypotheses,
}

pub fn faithfulness(a: &SelfSimilarAction) -> Result<Faithfulness> {
    let t = a.trivial_pairs();
    let gr = a.graph();
    let mut nontrivial_pairs = Vec::new();
    for (g, row) in t.iter().enumerate().skip(1) {
        for (v, &fixed) in row.iter().enumerate() {
            if fixed {
                nontrivial_pairs.push((a.group_name(g).to_string(), gr.vertex_name(v).to_string()));
            }
        }
    }
    let mut failing_set = None;
    for v in a.hereditary_invariant_sets()? {
        if !a.quotient_action(&v)?.is_faithful() {
            failing_set = Some(v);
            break;
        }
    }
    Ok(Faithfulness {
        faithful: nontrivial_pairs.is_empty(),
        strongly_faithful: failing_set.is_none(),
        nontrivial_pairs,
        failing_set,
        hypotheses: a.hypotheses(),
    })
}

/// Condition (M) for actions: every G-independent edge `e` admits `g` and a
/// nontrivial path `α ∉ eΛ*` from `g s_e` to `r_e`. The range-end edge of
/// such an `α` is some `f ≠ e` into `r_e` whose source is reachable from the
/// orbit of `s_e`.
pub fn condition_m_ss(a: &SelfSimilarAction) -> Verdict<String> {
    let gr = a.graph();
    let failing = (0..gr.num_edges()).filter(|&e| a.is_g_independent(e)).find(|&e| {
        let starts: Vec<usize> = (0..a.order()).map(|g| a.act_vertex(g, gr.src(e))).collect();
        let reach: Vec<Vec<bool>> = starts.iter().map(|&w| gr.reachable_from(w)).collect();
        !(0..gr.num_edges())
            .any(|f| f != e && gr.rng(f) == gr.rng(e) && reach.iter().any(|r| r[gr.src(f)]))
    });
    Verdict::from_failure(failing.map(|e| gr.edge(e).id.clone()))
}

/// (M) recomputed as: no quotient by a hereditary invariant set has a vertex
/// of in-degree one.
pub fn condition_m_ss_by_quotients(a: &SelfSimilarAction) -> Result<bool> {
    for v in a.hereditary_invariant_sets()? {
        let (q, _) = a.graph().quotient_graph(&v)?;
        if (0..q.num_vertices()).any(|x| q.in_degree(x) == 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `g` has finitely many strongly fixed paths (`gα = α`,
/// `φ(g, α) = 1`). States are `(h, x)`: after reading a prefix ending at `x`
/// the cocycle is `h`. An edge `e` into `x` is enabled when `he = e` and leads
/// to `(φ(h, e), s_e)`. Strongly fixed paths are walks from some `(g, v)` with
/// `gv = v` to a state with `h = 1`; there are infinitely many exactly when
/// such a walk can pass through a cycle.
pub fn strongly_fixed_finite(a: &SelfSimilarAction, g: usize) -> bool {
    let gr = a.graph();
    let nv = gr.num_vertices();
    let state = |h: usize, x: usize| h * nv + x;
    let n = a.order() * nv;
    let mut succ = vec![Vec::new(); n];
    for h in 0..a.order() {
        for x in 0..nv {
            for e in gr.in_edges(x) {
                if a.act_edge(h, e) == e {
                    succ[state(h, x)].push(state(a.phi(h, e), gr.src(e)));
                }
            }
        }
    }
    let mut fwd = vec![false; n];
    let mut stack: Vec<usize> = (0..nv).filter(|&v| a.act_vertex(g, v) == v).map(|v| state(g, v)).collect();
    for &s in &stack {
        fwd[s] = true;
    }
    while let Some(s) = stack.pop() {
        for &t in &succ[s] {
            if !fwd[t] {
                fwd[t] = true;
                stack.push(t);
            }
        }
    }
    let mut pred = vec![Vec::new(); n];
    for (s, ts) in succ.iter().enumerate() {
        for &t in ts {
            pred[t].push(s);
        }
    }
    let mut bwd = vec![false; n];
    let mut stack: Vec<usize> = (0..nv).map(|x| state(0, x)).collect();
    for &s in &stack {
        bwd[s] = true;
    }
    while let Some(s) = stack.pop() {
        for &t in &pred[s] {
            if !bwd[t] {
                bwd[t] = true;
                stack.push(t);
            }
        }
    }
    // a cycle among useful states means infinitely many accepted walks
    let useful: Vec<bool> = (0..n).map(|s| fwd[s] && bwd[s]).collect();
    let mut indeg = vec![0usize; n];
    for s in (0..n).filter(|&s| useful[s]) {
        for &t in &succ[s] {
            if useful[t] {
                indeg[t] += 1;
            }
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&s| useful[s] && indeg[s] == 0).collect();
    let mut removed = 0;
    while let Some(s) = queue.pop() {
        removed += 1;
        for &t in &succ[s] {
            if useful[t] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
    }
    removed == useful.iter().filter(|&&u| u).count()
}

impl SelfSimilarAction {
    /// Every non-identity element has finitely many strongly fixed paths.
    pub fn strongly_fixed_finite_all(&self) -> Verdict<String> {
        Verdict::from_failure(
            (1..self.order())
                .find(|&g| !strongly_fixed_finite(self, g))
                .map(|g| self.group_name(g).to_string()),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllReesSs {
    pub value: bool,
    pub strongly_faithful: bool,
    pub condition_m: bool,
    /// All congruences of the exact semigroup are Rees, when the graph is acyclic.
    pub by_congruences: Option<bool>,
}

impl AllReesSs {
    pub fn consistent(&self) -> bool {
        self.by_congruences.is_none_or(|b| b == self.value)
    }
}

pub fn all_rees_ss(a: &SelfSimilarAction, enumerate_bound: usize) -> Result<AllReesSs> {
    let strongly_faithful = faithfulness(a)?.strongly_faithful;
    let condition_m = condition_m_ss(a).holds;
    let by_congruences = if a.graph().is_acyclic() {
        let (s, _) = exact_ss_semigroup(a)?;
        let r = all_congruences_rees(&s, enumerate_bound)?;
        Some(r.by_enumeration.unwrap_or(r.by_ideals))
    } else {
        None
    };
    Ok(AllReesSs {
        value: strongly_faithful && condition_m,
        strongly_faithful,
        condition_m,
        by_congruences,
    })
}

/// `(v, 1, v)`
fn vertex_triple(v: usize) -> SsTriple {
    SsTriple {
        alpha: GraphPath::vertex(v),
        g: 0,
        beta: GraphPath::vertex(v),
    }
}

/// Ideals of the exact semigroup against hereditary invariant vertex sets:
/// both round trips, matching counts, and the path criterion for membership of
/// `(u, 1, u)` in the ideal generated by `(v, 1, v)`. `None` means the check
/// does not apply because the graph has a cycle.
pub fn check_ideal_correspondence(a: &SelfSimilarAction) -> Result<Option<std::result::Result<(), String>>> {
    if !a.graph().is_acyclic() {
        return Ok(None);
    }
    let (s, t) = exact_ss_semigroup(a)?;
    let gr = a.graph();
    let vertex_elem = |v: usize| t.find(&vertex_triple(v)).expect("vertex triple present");
    let sources_of = |ideal: &[Elem]| {
        let mut vs: Vec<usize> = ideal.iter().filter_map(|&x| t.triple(x)).map(|tr| tr.alpha.source).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    let outcome = (|| {
        let sets = a.hereditary_invariant_sets().map_err(|e| e.to_string())?;
        for v in &sets {
            let gens: Vec<Elem> = v.iter().map(|&x| vertex_elem(x)).collect();
            let ideal = s.ideal_generated_by(&gens);
            if &sources_of(&ideal) != v {
                return Err(format!("V(I(V)) differs from V = {v:?}"));
            }
        }
        let ideals = enumerate_ideals(&s).map_err(|e| e.to_string())?;
        if ideals.len() != sets.len() {
            return Err(format!("{} ideals but {} hereditary invariant sets", ideals.len(), sets.len()));
        }
        for ideal in &ideals {
            let vs = sources_of(&ideal.members);
            let gens: Vec<Elem> = vs.iter().map(|&x| vertex_elem(x)).collect();
            if s.ideal_generated_by(&gens) != ideal.members {
                return Err(format!("I(V(I)) differs from I for V(I) = {vs:?}"));
            }
        }
        for v in 0..gr.num_vertices() {
            let generated = s.principal_ideal(vertex_elem(v));
            let member = s.membership(&generated);
            for u in 0..gr.num_vertices() {
                let by_ideal = member[vertex_elem(u)];
                let by_path = (0..a.order()).any(|h| gr.reachable_from(a.act_vertex(h, u))[v]);
                if by_ideal != by_path {
                    return Err(format!(
                        "({0},1,{0}) in S({1},1,{1})S is {by_ideal} but the path test says {by_path}",
                        gr.vertex_name(u),
                        gr.vertex_name(v)
                    ));
                }
            }
        }
        Ok(())
    })();
    Ok(Some(outcome))
}

/// For each hereditary invariant `V`, the map keeping triples with `s_α ∉ V`
/// and sending the rest to zero is a surjective homomorphism onto the
/// semigroup of `Λ \ V` whose kernel classes are the ideal and singletons.
pub fn check_quotient_isomorphism(a: &SelfSimilarAction) -> Result<Option<std::result::Result<(), String>>> {
    if !a.graph().is_acyclic() {
        return Ok(None);
    }
    let (s, t) = exact_ss_semigroup(a)?;
    let gr = a.graph();
    let outcome = (|| {
        for v in a.hereditary_invariant_sets().map_err(|e| e.to_string())? {
            let qa = a.quotient_action(&v).map_err(|e| e.to_string())?;
            let (qs, qt) = exact_ss_semigroup(&qa).map_err(|e| e.to_string())?;
            let qg = qa.graph();
            let (_, vmap) = gr.quotient_graph(&v).map_err(|e| e.to_string())?;
            let emap: HashMap<usize, usize> = (0..gr.num_edges())
                .filter_map(|e| qg.find_edge(&gr.edge(e).id).map(|f| (e, f)))
                .collect();
            let translate = |p: &GraphPath| GraphPath {
                edges: p.edges.iter().map(|e| emap[e]).collect(),
                source: vmap[p.source].unwrap(),
                range: vmap[p.range].unwrap(),
            };
            let removed: Vec<bool> = (0..gr.num_vertices()).map(|x| v.contains(&x)).collect();
            let map: Vec<Elem> = (0..s.len())
                .map(|x| match t.triple(x) {
                    Some(tr) if !removed[tr.alpha.source] => qt
                        .find(&SsTriple {
                            alpha: translate(&tr.alpha),
                            g: tr.g,
                            beta: translate(&tr.beta),
                        })
                        .expect("surviving triple exists in the quotient"),
                    _ => 0,
                })
                .collect();
            Homomorphism::new(&s, &qs, map.clone()).map_err(|e| format!("V = {v:?}: {e}"))?;
            let mut hit = vec![false; qs.len()];
            for &y in &map {
                hit[y] = true;
            }
            if hit.iter().any(|&h| !h) {
                return Err(format!("V = {v:?}: π is not surjective"));
            }
            let gens: Vec<Elem> = v
                .iter()
                .map(|&x| t.find(&vertex_triple(x)).expect("vertex triple"))
                .collect();
            let ideal = s.membership(&s.ideal_generated_by(&gens));
            for x in s.elements() {
                if (map[x] == 0) != ideal[x] {
                    return Err(format!("V = {v:?}: π kills {} but the ideal disagrees", s.label(x)));
                }
            }
        }
        Ok(())
    })();
    Ok(Some(outcome))
}

/// On the exact semigroup, `μ` relates exactly the pairs `(α, g, β)`,
/// `(α, h, β)` with `gγ' = hγ'` for every path `γ'` with range `s_β`; and the
/// semigroup is fundamental exactly when the action is faithful.
pub fn check_mu_characterization(a: &SelfSimilarAction) -> Result<Option<std::result::Result<(), String>>> {
    let Some(depth) = a.graph().longest_path() else {
        return Ok(None);
    };
    let (s, t) = exact_ss_semigroup(a)?;
    let gr = a.graph();
    let paths = gr.paths_up_to(depth);
    let m = mu(&s);
    let outcome = (|| {
        for x in s.elements() {
            for y in s.elements() {
                let by_paths = match (t.triple(x), t.triple(y)) {
                    (None, None) => true,
                    (Some(p), Some(q)) => {
                        p.alpha == q.alpha
                            && p.beta == q.beta
                            && paths
                                .iter()
                                .filter(|c| c.range == p.beta.source)
                                .all(|c| a.act_on_path(p.g, c).0 == a.act_on_path(q.g, c).0)
                    }
                    _ => false,
                };
                if by_paths != m.related(x, y) {
                    return Err(format!(
                        "μ relates {} and {}: {}, path criterion: {by_paths}",
                        s.label(x),
                        s.label(y),
                        m.related(x, y)
                    ));
                }
            }
        }
        if is_fundamental(&s) != a.is_faithful() {
            return Err("fundamental and faithful disagree".into());
        }
        Ok(())
    })();
    Ok(Some(outcome))
}

/// On the exact semigroup, (M) agrees with every Rees quotient having a
/// 0-disjunctive semilattice.
pub fn check_condition_m_quotients(a: &SelfSimilarAction) -> Result<Option<std::result::Result<(), String>>> {
    if !a.graph().is_acyclic() {
        return Ok(None);
    }
    let (s, _) = exact_ss_semigroup(a)?;
    let mut all = true;
    for ideal in enumerate_ideals(&s)? {
        let q = rees_quotient(&s, &ideal.members)?;
        if !Semilattice::of(&q.semigroup).is_0_disjunctive().holds {
            all = false;
            break;
        }
    }
    let m = condition_m_ss(a).holds;
    Ok(Some(if all == m {
        Ok(())
    } else {
        Err(format!("(M) is {m} but quotients 0-disjunctive is {all}"))
    }))
}
