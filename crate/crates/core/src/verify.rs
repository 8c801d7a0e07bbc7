//! Analysis pipelines and theorem checks over single instances and whole
//! corpora. Every check is folded into an [`InstanceReport`].

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::congruences::{
    all_congruences_rees, condition_l, double_arrow, is_congruence_free, quotient, rees_quotient,
    DEFAULT_ENUMERATE_BOUND,
};
use crate::corpus::{CorpusEntry, Instance};
use crate::error::{Error, Result};
use crate::graphs::{exact_graph_semigroup, DirectedGraph};
use crate::groupoid::{build_groupoids, condition_k, verify_structure_theorems, weakly_fixed_criterion};
use crate::ideals_filters::{
    enumerate_ideals, hull, hull_tight, ideal_to_order_ideal, invariant_order_ideals, is_invariant_order_ideal,
    is_saturated_ideal_s_level, is_saturated_order_ideal, kernel, order_ideal_to_ideal, order_ideals, FilterSpace,
    DEFAULT_INVARIANT_SUBSET_ORBITS,
};
use crate::relations::{green_h, h_and_mu, injectivity_criteria, is_fundamental, mu, Homomorphism};
use crate::report::{HypothesisStatus, InstanceReport, Report};
use crate::selfsimilar::{
    all_rees_ss, check_condition_m_quotients, check_ideal_correspondence, check_mu_characterization,
    check_quotient_isomorphism, condition_m_ss, condition_m_ss_by_quotients, exact_ss_semigroup, faithfulness,
    strongly_fixed_finite, SelfSimilarAction, DEFAULT_VALIDATION_DEPTH,
};
use crate::semigroup::{Elem, InverseSemigroup};
use crate::semilattice::Semilattice;

use HypothesisStatus::{Met, UnmetRecorded};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub enumerate_bound: usize,
    pub validation_depth: usize,
    /// Random `(e, C)` pairs per semigroup for the basic-set test.
    pub basic_set_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: crate::corpus::DEFAULT_SEED,
            enumerate_bound: DEFAULT_ENUMERATE_BOUND,
            validation_depth: DEFAULT_VALIDATION_DEPTH,
            basic_set_samples: 24,
        }
    }
}

impl VerifyConfig {
    pub fn to_map(&self) -> BTreeMap<String, serde_json::Value> {
        BTreeMap::from([
            ("seed".to_string(), json!(self.seed)),
            ("enumerate_bound".to_string(), json!(self.enumerate_bound)),
            ("validation_depth".to_string(), json!(self.validation_depth)),
            ("basic_set_samples".to_string(), json!(self.basic_set_samples)),
        ])
    }
}

fn labels(s: &InverseSemigroup, set: &[Elem]) -> String {
    let l: Vec<&str> = set.iter().map(|&a| s.label(a)).collect();
    format!("{{{}}}", l.join(","))
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

// ---------------------------------------------------------------- semigroups

pub fn semilattice_properties(s: &InverseSemigroup, r: &mut InstanceReport) {
    let sl = Semilattice::of(s);
    r.property("idempotents", sl.len());
    r.property("atoms", sl.atoms().iter().map(|&a| s.label(a)).collect::<Vec<_>>());
    let zd = sl.is_0_disjunctive();
    r.property_with(
        "zeroDisjunctive",
        zd.holds,
        zd.witness.map(|(e, f)| format!("{} < {}", s.label(e), s.label(f))),
        Met,
    );
    let tr = sl.has_trapping_condition();
    r.property_with(
        "trapping",
        tr.holds,
        tr.witness.map(|(f, e)| format!("{} < {}", s.label(f), s.label(e))),
        Met,
    );
}

pub fn relations_properties(s: &InverseSemigroup, r: &mut InstanceReport) {
    let g = h_and_mu(s);
    r.property("fundamental", g.fundamental);
    r.property("cryptic", g.cryptic);
    r.property("muClasses", g.mu.num_classes());
    r.property("hClasses", g.h.num_classes());
}

pub fn congruence_properties(s: &InverseSemigroup, bound: usize, r: &mut InstanceReport) -> Result<()> {
    let da = double_arrow(s)?;
    r.property("doubleArrowIsEquality", da.partition.is_equality());
    r.property("conditionL", condition_l(s)?);
    r.property("conditionK", condition_k(s)?.value);
    let rees = all_congruences_rees(s, bound)?;
    let witness = rees
        .non_rees_congruence
        .as_ref()
        .map(|p| p.display_with(s))
        .or_else(|| rees.failing_ideal.as_ref().map(|i| format!("failing ideal {}", labels(s, i))));
    r.property_with("allCongruencesRees", rees.value(), witness, Met);
    r.property("allCongruencesReesByEnumeration", rees.by_enumeration);
    r.property("congruenceFree", is_congruence_free(s, bound)?.value);
    r.property("hausdorff", true);
    Ok(())
}

pub fn ideal_properties(s: &InverseSemigroup, r: &mut InstanceReport) -> Result<()> {
    let ideals = enumerate_ideals(s)?;
    let show = |only_saturated: bool| -> Vec<String> {
        ideals
            .iter()
            .filter(|i| !only_saturated || i.saturated)
            .map(|i| labels(s, &i.members))
            .collect()
    };
    r.property("ideals", show(false));
    r.property("saturatedIdeals", show(true));
    let space = FilterSpace::new(s)?;
    let mins = |tight: bool| -> Vec<String> {
        space
            .filters()
            .iter()
            .filter(|f| !tight || f.tight)
            .map(|f| format!("{}↑", s.label(f.min)))
            .collect()
    };
    r.property("filters", mins(false));
    r.property("tightFilters", mins(true));
    Ok(())
}

pub fn groupoid_properties(s: &InverseSemigroup, r: &mut InstanceReport) -> Result<()> {
    let g = build_groupoids(s)?;
    r.property("universalGroupoid", g.universal.summary());
    r.property("tightGroupoid", g.tight.summary());
    let eff = g.tight.effectiveness()?;
    r.property_with("effective", eff.effective, eff.nontrivial_isotropy, Met);
    r.property("stronglyEffective", eff.strongly_effective);
    Ok(())
}

pub fn analyze_semigroup(id: &str, s: &InverseSemigroup, cfg: &VerifyConfig) -> Result<InstanceReport> {
    let mut r = InstanceReport::new(id, "semigroup");
    r.property("size", s.len());
    r.property("commutative", s.is_commutative());
    semilattice_properties(s, &mut r);
    relations_properties(s, &mut r);
    congruence_properties(s, cfg.enumerate_bound, &mut r)?;
    ideal_properties(s, &mut r)?;
    groupoid_properties(s, &mut r)?;
    Ok(r)
}

fn is_order_ideal(sl: &Semilattice<'_>, x: &[Elem]) -> bool {
    x.iter().all(|&e| sl.down(e).iter().all(|f| x.contains(f)))
}

/// Samples `(e, C)` with `C ⊆ e↓` nonzero and compares emptiness of the tight
/// basic set `D(e; C)` with `e → C`. Returns the number of samples drawn.
pub fn check_basic_sets(s: &InverseSemigroup, samples: usize, seed: u64) -> Result<(usize, Check)> {
    let sl = Semilattice::of(s);
    let space = FilterSpace::new(s)?;
    let nonzero: Vec<Elem> = sl.nonzero().collect();
    if nonzero.is_empty() {
        return Ok((0, Ok(())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (s.len() as u64).wrapping_mul(0x9e37_79b9));
    for _ in 0..samples {
        let e = *nonzero.choose(&mut rng).expect("nonempty");
        let below: Vec<Elem> = sl.down(e).into_iter().filter(|&f| f != sl.zero()).collect();
        let c: Vec<Elem> = below.into_iter().filter(|_| rng.gen_bool(0.4)).collect();
        let empty = space.tight_basic_set(s, e, &c).is_empty();
        let covers = sl.covers(e, &c);
        if empty != covers {
            return Ok((
                samples,
                Err(format!(
                    "D({}; {}) empty is {empty} but cover is {covers}",
                    s.label(e),
                    labels(s, &c)
                )),
            ));
        }
    }
    Ok((samples, Ok(())))
}

fn filter_checks(s: &InverseSemigroup, cfg: &VerifyConfig, r: &mut InstanceReport) -> Result<()> {
    let sl = Semilattice::of(s);
    let space = FilterSpace::new(s)?;

    let tight_mins = sorted(space.tight().iter().map(|&f| space.get(f).min).collect());
    let atoms = sorted(sl.atoms());
    let classes_agree = space.filters().iter().all(|f| f.ultra == f.tight);
    r.check(
        "tight filters are the atom filters",
        Met,
        ensure(tight_mins == atoms && classes_agree, || {
            format!("tight minima {} vs atoms {}", labels(s, &tight_mins), labels(s, &atoms))
        }),
    );

    let n = space.len();
    let families: Vec<Vec<usize>> = if n <= 10 {
        (0u32..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    } else {
        let mut f: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        f.push(Vec::new());
        f.push((0..n).collect());
        f
    };
    for a in &families {
        let k = kernel(&space, s, a);
        r.check(
            "kernel is an order ideal",
            Met,
            ensure(is_order_ideal(&sl, &k), || format!("k({a:?}) = {}", labels(s, &k))),
        );
        let h = hull(&space, s, &k);
        r.check(
            "filter set lies in the hull of its kernel",
            Met,
            ensure(a.iter().all(|f| h.contains(f)), || format!("A = {a:?}, h(k(A)) = {h:?}")),
        );
        if a.iter().all(|&f| space.get(f).tight) {
            r.check(
                "kernel of tight filters is saturated",
                Met,
                ensure(is_saturated_order_ideal(s, &k), || format!("k({a:?}) = {}", labels(s, &k))),
            );
        }
    }

    for x in order_ideals(s)? {
        let h = hull(&space, s, &x);
        let back = kernel(&space, s, &h);
        r.check(
            "kernel of the hull of an order ideal",
            Met,
            ensure(back == x, || format!("X = {}, k(h(X)) = {}", labels(s, &x), labels(s, &back))),
        );
        let inv_x = is_invariant_order_ideal(s, &x);
        let inv_h = space.is_invariant(s, &h);
        r.check(
            "invariant order ideals have invariant hulls",
            Met,
            ensure(inv_x == inv_h, || format!("X = {}: invariant {inv_x}, h(X) invariant {inv_h}", labels(s, &x))),
        );
    }

    let inv = invariant_order_ideals(s)?;
    let ideals = enumerate_ideals(s)?;
    let mut outcome = ensure(inv.len() == ideals.len(), || {
        format!("{} invariant order ideals but {} ideals", inv.len(), ideals.len())
    });
    for x in &inv {
        let back = ideal_to_order_ideal(s, &order_ideal_to_ideal(s, x));
        if outcome.is_ok() && &back != x {
            outcome = Err(format!("X = {} returns as {}", labels(s, x), labels(s, &back)));
        }
    }
    for i in &ideals {
        let back = order_ideal_to_ideal(s, &ideal_to_order_ideal(s, &i.members));
        if outcome.is_ok() && back != i.members {
            outcome = Err(format!("I = {} returns as {}", labels(s, &i.members), labels(s, &back)));
        }
        r.check(
            "saturation agrees at semigroup and semilattice level",
            Met,
            ensure(is_saturated_ideal_s_level(s, &i.members) == i.saturated, || {
                format!("I = {}", labels(s, &i.members))
            }),
        );
    }
    r.check("ideals and invariant order ideals", Met, outcome);

    let (_, basic) = check_basic_sets(s, cfg.basic_set_samples, cfg.seed)?;
    r.check("basic-set emptiness and covers", Met, basic);

    const CORRESPONDENCE: &str = "saturated invariant ideals and tight invariant sets";
    if !sl.has_trapping_condition().holds {
        r.skip(CORRESPONDENCE);
    } else {
        for x in inv.iter().filter(|x| is_saturated_order_ideal(s, x)) {
            let back = kernel(&space, s, &hull_tight(&space, s, x));
            r.check(
                CORRESPONDENCE,
                Met,
                ensure(&back == x, || format!("X = {}, k(h(X)) = {}", labels(s, x), labels(s, &back))),
            );
        }
        match space.invariant_subsets(s, true, DEFAULT_INVARIANT_SUBSET_ORBITS) {
            Ok(subsets) => {
                for a in &subsets.subsets {
                    let back = sorted(hull_tight(&space, s, &kernel(&space, s, a)));
                    r.check(
                        CORRESPONDENCE,
                        Met,
                        ensure(&back == a, || format!("A = {a:?}, h(k(A)) = {back:?}")),
                    );
                }
            }
            Err(Error::TooLarge { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn homomorphism_checks(s: &InverseSemigroup, r: &mut InstanceReport) -> Result<()> {
    const NAME: &str = "injectivity criteria agree";
    let run = |phi: Homomorphism<'_>, what: String, r: &mut InstanceReport| {
        let outcome = injectivity_criteria(&phi).map(|_| ()).map_err(|e| format!("{what}: {e}"));
        r.check(NAME, Met, outcome);
    };
    run(Homomorphism::identity(s), "identity".into(), r);
    for (name, p) in [("double arrow", double_arrow(s)?.partition), ("mu", mu(s))] {
        let q = quotient(s, &p)?;
        run(Homomorphism::new(s, &q.semigroup, q.projection.clone())?, format!("{name} quotient"), r);
    }
    for ideal in enumerate_ideals(s)? {
        let q = rees_quotient(s, &ideal.members)?;
        run(
            Homomorphism::new(s, &q.semigroup, q.projection.clone())?,
            format!("Rees quotient by {}", labels(s, &ideal.members)),
            r,
        );
        let (sub, embed) = s.subsemigroup(&ideal.members)?;
        run(Homomorphism::new(&sub, s, embed)?, format!("inclusion of {}", labels(s, &ideal.members)), r);
    }
    Ok(())
}

pub fn semigroup_theorems(s: &InverseSemigroup, cfg: &VerifyConfig, r: &mut InstanceReport) -> Result<()> {
    let sl = Semilattice::of(s);
    match double_arrow(s) {
        Ok(da) => {
            r.check(
                "double arrow is a 0-restricted congruence",
                Met,
                ensure(da.is_zero_restricted, || da.partition.display_with(s)),
            );
            let q = quotient(s, &da.partition)?;
            let zd = Semilattice::of(&q.semigroup).is_0_disjunctive();
            r.check(
                "double-arrow quotient has a 0-disjunctive semilattice",
                Met,
                ensure(zd.holds, || {
                    let (e, f) = zd.witness.expect("failure has a witness");
                    format!("{} < {} in the quotient", q.semigroup.label(e), q.semigroup.label(f))
                }),
            );
            let eq = da.partition.is_equality();
            let zd_s = sl.is_0_disjunctive().holds;
            let fund = is_fundamental(s);
            r.check(
                "double arrow and 0-disjunctive semilattices",
                Met,
                ensure((!eq || zd_s) && (!(fund && zd_s) || eq), || {
                    format!("equality {eq}, 0-disjunctive {zd_s}, fundamental {fund}")
                }),
            );
        }
        Err(e @ Error::NotCongruence { .. }) => {
            r.check("double arrow is a 0-restricted congruence", Met, Err(e.to_string()));
        }
        Err(e) => return Err(e),
    }
    r.check(
        "mu lies inside H",
        Met,
        ensure(mu(s).refines(&green_h(s)), || "mu relates elements in different H-classes".into()),
    );

    let g = build_groupoids(s)?;
    r.check("groupoid axioms", Met, g.universal.check_axioms().map_err(|e| e.to_string()));
    r.check("groupoid axioms", Met, g.tight.check_axioms().map_err(|e| e.to_string()));
    for c in verify_structure_theorems(s)?.checks {
        let outcome = if c.passed {
            Ok(())
        } else {
            Err(format!("{}: {}", c.instance, c.counterexample.unwrap_or_default()))
        };
        r.check(c.theorem, Met, outcome);
    }

    filter_checks(s, cfg, r)?;

    let eff = g.tight.effectiveness()?;
    let l = condition_l(s)?;
    r.check(
        "condition L and effectiveness",
        Met,
        ensure(l == eff.effective, || format!("condition L {l}, effective {}", eff.effective)),
    );
    let wf = weakly_fixed_criterion(s)?;
    r.check(
        "effectiveness chain",
        Met,
        ensure(wf.chain_holds, || {
            format!(
                "effective {}, cover criterion {}, quotient fundamental {}",
                wf.tight_effective, wf.holds, wf.quotient_fundamental
            )
        }),
    );
    let k = condition_k(s)?;
    let status = if k.trapping { Met } else { UnmetRecorded };
    r.check(
        "condition K and strong effectiveness",
        status,
        ensure(k.agrees, || format!("condition K {}, strongly effective {}", k.value, k.strongly_effective)),
    );

    let rees = all_congruences_rees(s, cfg.enumerate_bound)?;
    match rees.by_enumeration {
        Some(a) => r.check(
            "all congruences Rees by two methods",
            Met,
            ensure(rees.agree(), || format!("enumeration {a}, per ideal {}", rees.by_ideals)),
        ),
        None => r.skip("all congruences Rees by two methods"),
    }
    let cf = is_congruence_free(s, cfg.enumerate_bound)?;
    match cf.by_enumeration {
        Some(b) => r.check(
            "congruence-free by two methods",
            Met,
            ensure(b == cf.value, || format!("enumeration {b}, criterion {}", cf.value)),
        ),
        None => r.skip("congruence-free by two methods"),
    }

    homomorphism_checks(s, r)
}

pub fn verify_semigroup(id: &str, s: &InverseSemigroup, cfg: &VerifyConfig) -> Result<InstanceReport> {
    let mut r = analyze_semigroup(id, s, cfg)?;
    semigroup_theorems(s, cfg, &mut r)?;
    Ok(r)
}

// -------------------------------------------------------------------- graphs

pub fn analyze_graph(id: &str, g: &DirectedGraph) -> Result<InstanceReport> {
    let mut r = InstanceReport::new(id, "graph");
    let sum = g.summary();
    r.property("vertices", sum.vertices);
    r.property("edges", sum.edges);
    r.property("inDegrees", &sum.in_degrees);
    r.property("acyclic", sum.acyclic);
    let (sources, sinks) = g.sources_and_sinks();
    let names = |vs: &[usize]| -> Vec<String> { vs.iter().map(|&v| g.vertex_name(v).to_string()).collect() };
    r.property("sources", names(&sources));
    r.property("sinks", names(&sinks));
    let c = g.conditions();
    r.property_with("L", c.l.holds, c.l.witness.map(|w| w.join(".")), Met);
    r.property_with("K", c.k.holds, c.k.witness, Met);
    r.property_with("M", c.m.holds, c.m.witness, Met);
    let hs = g.hereditary_sets()?;
    r.property("hereditarySets", hs.len());
    r.property("saturatedHereditarySets", hs.iter().filter(|h| h.saturated).count());
    Ok(r)
}

pub fn graph_theorems(g: &DirectedGraph, cfg: &VerifyConfig, r: &mut InstanceReport) -> Result<()> {
    let c = g.conditions();
    let brute = g
        .simple_cycles(10_000)
        .iter()
        .all(|cyc| cyc.iter().any(|&e| g.in_degree(g.rng(e)) > 1));
    r.check(
        "condition L by cycle enumeration",
        Met,
        ensure(brute == c.l.holds, || format!("enumeration {brute}, direct {}", c.l.holds)),
    );
    let mq = g.condition_m_by_quotients()?;
    r.check(
        "condition M by quotients",
        Met,
        ensure(mq == c.m.holds, || format!("quotients {mq}, direct {}", c.m.holds)),
    );
    let kq = g.condition_k_by_quotients()?;
    r.check(
        "condition K by quotients",
        Met,
        ensure(kq == c.k.holds, || format!("quotients {kq}, direct {}", c.k.holds)),
    );
    if g.is_acyclic() {
        let (s, _) = exact_graph_semigroup(g)?;
        let rees = all_congruences_rees(&s, cfg.enumerate_bound)?;
        let value = rees.by_enumeration.unwrap_or(rees.by_ideals);
        r.check(
            "graph semigroup congruences are Rees iff condition M",
            Met,
            ensure(value == c.m.holds && rees.agree(), || {
                format!("all Rees {value}, condition M {}", c.m.holds)
            }),
        );
        let sl = condition_l(&s)?;
        r.check(
            "graph and semigroup condition L",
            Met,
            ensure(sl == c.l.holds, || format!("semigroup {sl}, graph {}", c.l.holds)),
        );
        let sk = condition_k(&s)?.value;
        r.check(
            "graph and semigroup condition K",
            Met,
            ensure(sk == c.k.holds, || format!("semigroup {sk}, graph {}", c.k.holds)),
        );
    } else {
        r.skip("graph semigroup congruences are Rees iff condition M");
    }
    Ok(())
}

pub fn verify_graph(id: &str, g: &DirectedGraph, cfg: &VerifyConfig) -> Result<InstanceReport> {
    let mut r = analyze_graph(id, g)?;
    graph_theorems(g, cfg, &mut r)?;
    Ok(r)
}

// ------------------------------------------------------------------- actions

pub fn analyze_action(id: &str, a: &SelfSimilarAction, cfg: &VerifyConfig) -> Result<InstanceReport> {
    let mut r = InstanceReport::new(id, "selfsimilar");
    let hyp = a.hypotheses();
    let status = if hyp.met() { Met } else { UnmetRecorded };
    r.property("groupOrder", a.order());
    r.property("vertices", a.graph().num_vertices());
    r.property("edges", a.graph().num_edges());
    r.property_with("standingHypotheses", &hyp, None, status);
    let orbits = a.vertex_orbits();
    r.property("vertexOrbits", orbits.iter().max().map_or(0, |m| m + 1));
    let independent: Vec<String> = (0..a.graph().num_edges())
        .filter(|&e| a.is_g_independent(e))
        .map(|e| a.graph().edge(e).id.clone())
        .collect();
    r.property("independentEdges", independent);
    let f = faithfulness(a)?;
    let pair = f.nontrivial_pairs.first().map(|(g, v)| format!("{g} fixes every path into {v}"));
    r.property_with("faithful", f.faithful, pair, status);
    r.property_with(
        "stronglyFaithful",
        f.strongly_faithful,
        f.failing_set.as_ref().map(|v| format!("quotient by {v:?}")),
        status,
    );
    let m = condition_m_ss(a);
    r.property_with("conditionM", m.holds, m.witness, status);
    let fixed: BTreeMap<String, bool> = (0..a.order())
        .map(|g| (a.group_name(g).to_string(), strongly_fixed_finite(a, g)))
        .collect();
    let hausdorff = a.strongly_fixed_finite_all();
    r.property("stronglyFixedFinite", &fixed);
    r.property_with("hausdorff", hausdorff.holds, hausdorff.witness, status);
    let rees = all_rees_ss(a, cfg.enumerate_bound)?;
    r.property_with("allCongruencesRees", rees.value, None, status);
    Ok(r)
}

pub fn action_theorems(a: &SelfSimilarAction, cfg: &VerifyConfig, r: &mut InstanceReport) -> Result<()> {
    let status = if a.hypotheses().met() { Met } else { UnmetRecorded };
    r.check(
        "action axioms",
        Met,
        a.validate_action(cfg.validation_depth).map(|_| ()).map_err(|e| e.to_string()),
    );
    let m = condition_m_ss(a).holds;
    let mq = condition_m_ss_by_quotients(a)?;
    r.check(
        "condition M by quotients",
        status,
        ensure(m == mq, || format!("direct {m}, quotients {mq}")),
    );
    let exact: [(&str, Option<Check>); 4] = [
        ("ideals and hereditary invariant sets", check_ideal_correspondence(a)?),
        ("quotient by a hereditary invariant set", check_quotient_isomorphism(a)?),
        ("mu and agreement on paths", check_mu_characterization(a)?),
        ("condition M and 0-disjunctive Rees quotients", check_condition_m_quotients(a)?),
    ];
    for (name, outcome) in exact {
        match outcome {
            Some(o) => r.check(name, status, o),
            None => r.skip(name),
        }
    }
    let rees = all_rees_ss(a, cfg.enumerate_bound)?;
    match rees.by_congruences {
        Some(b) => r.check(
            "congruences Rees iff strongly faithful with condition M",
            status,
            ensure(b == rees.value, || {
                format!(
                    "congruences {b}, strongly faithful {}, condition M {}",
                    rees.strongly_faithful, rees.condition_m
                )
            }),
        ),
        None => r.skip("congruences Rees iff strongly faithful with condition M"),
    }
    if a.order() == 1 {
        r.check("trivial group matches the graph", Met, trivial_group_agreement(a));
    }
    Ok(())
}

/// With the trivial group every self-similar notion reduces to the graph one.
pub fn trivial_group_agreement(a: &SelfSimilarAction) -> Check {
    let g = a.graph();
    let gm = g.condition_m().holds;
    let am = condition_m_ss(a).holds;
    ensure(gm == am, || format!("graph M {gm}, action M {am}"))?;
    ensure(a.is_faithful(), || "trivial group must act faithfully".into())?;
    if g.is_acyclic() {
        let (ss, st) = exact_ss_semigroup(a).map_err(|e| e.to_string())?;
        let (gs, gt) = exact_graph_semigroup(g).map_err(|e| e.to_string())?;
        ensure(ss.len() == gs.len(), || format!("{} triples vs {} pairs", ss.len(), gs.len()))?;
        let to_graph = |x: Elem| st.triple(x).map_or(Some(0), |t| gt.find(&t.alpha, &t.beta));
        let map: Vec<Elem> = ss
            .elements()
            .map(|x| to_graph(x).ok_or_else(|| format!("{} has no graph counterpart", ss.label(x))))
            .collect::<std::result::Result<_, _>>()?;
        Homomorphism::new(&ss, &gs, map).map_err(|e| e.to_string())?;
        let sk = condition_k(&ss).map_err(|e| e.to_string())?.value;
        ensure(sk == g.condition_k().holds, || "condition K differs".into())?;
    }
    Ok(())
}

pub fn verify_action(id: &str, a: &SelfSimilarAction, cfg: &VerifyConfig) -> Result<InstanceReport> {
    let mut r = analyze_action(id, a, cfg)?;
    action_theorems(a, cfg, &mut r)?;
    Ok(r)
}

// -------------------------------------------------------------------- corpus

pub fn verify_entry(entry: &CorpusEntry, cfg: &VerifyConfig) -> Result<InstanceReport> {
    match &entry.instance {
        Instance::Semigroup(s) => verify_semigroup(&entry.id, s, cfg),
        Instance::Graph(g) => verify_graph(&entry.id, g, cfg),
        Instance::Action(a) => verify_action(&entry.id, a, cfg),
    }
}

/// Verifies entries in parallel; results keep corpus order.
pub fn verify_corpus(entries: &[CorpusEntry], cfg: &VerifyConfig) -> Result<Report> {
    let reports = entries
        .par_iter()
        .map(|e| verify_entry(e, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new(cfg.to_map(), reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::report::Outcome;

    #[test]
    fn i2_passes_everything() {
        let r = verify_semigroup("I2", &fixtures::i2(), &VerifyConfig::default()).unwrap();
        let fails: Vec<_> = r.falsifications().collect();
        assert!(fails.is_empty(), "{fails:?}");
        assert_eq!(r.properties["fundamental"].value, json!(true));
        assert_eq!(r.properties["cryptic"].value, json!(false));
        assert_eq!(r.properties["conditionL"].value, json!(true));
        assert_eq!(r.properties["conditionK"].value, json!(true));
    }

    #[test]
    fn z2_records_non_effective() {
        let r = verify_semigroup("Z2", &fixtures::z2_with_zero(), &VerifyConfig::default()).unwrap();
        assert_eq!(r.properties["effective"].value, json!(false));
        assert_eq!(r.properties["conditionL"].value, json!(false));
        assert_eq!(r.theorems["condition L and effectiveness"].outcome, Outcome::Pass);
    }

    #[test]
    fn graph_l1_values() {
        let r = verify_graph("L1", &fixtures::graph_l1(), &VerifyConfig::default()).unwrap();
        for k in ["L", "K", "M"] {
            assert_eq!(r.properties[k].value, json!(false), "{k}");
        }
        assert_eq!(r.falsifications().count(), 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let entries = crate::corpus::builtin(&Default::default());
        let few: Vec<_> = entries.into_iter().take(6).collect();
        let cfg = VerifyConfig::default();
        let a = verify_corpus(&few, &cfg).unwrap().to_json();
        let b = verify_corpus(&few, &cfg).unwrap().to_json();
        assert_eq!(a, b);
    }
}
