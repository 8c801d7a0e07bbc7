//! Acceptance criteria 1 to 10. Each prints one PASS/FAIL line; the test fails
//! if any criterion fails.

use std::time::Instant;

use num_rational::Rational64;

use isgw::congruences::{
    all_congruences_rees, condition_l, double_arrow, enumerate_congruences, quotient, rees_quotient,
};
use isgw::corpus::{builtin, CorpusConfig, Instance};
use isgw::graphs::exact_graph_semigroup;
use isgw::groupoid::{condition_k, double_arrow_isomorphism, ideal_reduction, quotient_reduction};
use isgw::ideals_filters::{
    enumerate_ideals, hull, hull_tight, invariant_order_ideals, is_saturated_order_ideal, kernel, order_ideals,
    FilterSpace, DEFAULT_INVARIANT_SUBSET_ORBITS,
};
use isgw::relations::{centralizer, injectivity_criteria};
use isgw::selfsimilar::{all_rees_ss, faithfulness, strongly_fixed_finite, SelfSimilarAction};
use isgw::verify::{check_basic_sets, trivial_group_agreement};
use isgw::{fixtures, DirectedGraph, FiniteGroupoid, Homomorphism, InverseSemigroup, Semilattice};

type Outcome = Result<String, String>;

fn semigroups() -> Vec<(String, InverseSemigroup)> {
    builtin(&CorpusConfig::default())
        .into_iter()
        .filter_map(|e| match e.instance {
            Instance::Semigroup(s) => Some((e.id, s)),
            _ => None,
        })
        .collect()
}

fn fixture_graphs() -> Vec<(String, DirectedGraph)> {
    let mut g = vec![
        ("L1".to_string(), fixtures::graph_l1()),
        ("R2".to_string(), fixtures::graph_r2()),
        ("A2".to_string(), fixtures::graph_a2()),
        ("P2".to_string(), fixtures::graph_p2()),
        ("point".to_string(), fixtures::graph_point()),
    ];
    g.extend(fixtures::assorted_graphs().into_iter().map(|(n, g)| (n.to_string(), g)));
    g
}

fn set_of(s: &InverseSemigroup, labels: &[&str]) -> Vec<usize> {
    let mut v: Vec<usize> = labels.iter().map(|l| s.find(l).expect("label")).collect();
    v.sort_unstable();
    v
}

fn criterion_1() -> Outcome {
    let s = fixtures::e4();
    let space = FilterSpace::new(&s).map_err(|e| e.to_string())?;
    let f = s.find("f").unwrap();
    let n_f = space.basic_set(&s, f, &[]);
    let k = kernel(&space, &s, &n_f);
    if k != set_of(&s, &["e", "0"]) {
        return Err(format!("k(N^f) = {k:?}"));
    }
    let h = hull(&space, &s, &k);
    let mut members: Vec<Vec<usize>> = h.iter().map(|&i| space.get(i).members.clone()).collect();
    members.sort();
    let mut want = vec![set_of(&s, &["f", "g"]), set_of(&s, &["g"])];
    want.sort();
    if members != want {
        return Err(format!("h(k(N^f)) = {members:?}"));
    }
    let strict = n_f.iter().all(|x| h.contains(x)) && n_f.len() < h.len();
    if !strict {
        return Err("N^f is not strictly inside h(k(N^f))".into());
    }
    let extra = h.iter().find(|x| !n_f.contains(x)).unwrap();
    Ok(format!("k(N^f) = {{e,0}}, h(k(N^f)) = {{{{f,g}},{{g}}}}, witness {}↑", s.label(space.get(*extra).min)))
}

type Matrix = [[Rational64; 3]; 3];

fn mat(entries: &[(usize, usize, i64)]) -> Matrix {
    let mut m = [[Rational64::from_integer(0); 3]; 3];
    for &(i, j, v) in entries {
        m[i][j] = Rational64::from_integer(v);
    }
    m
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut c = mat(&[]);
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn rank(rows: Vec<Vec<Rational64>>) -> usize {
    let mut rows = rows;
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != Rational64::from_integer(0)) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != Rational64::from_integer(0) {
                let factor = rows[i][c] / rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x -= factor * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn criterion_2(semigroups: &[(String, InverseSemigroup)]) -> Outcome {
    let s = fixtures::i2();
    if s.len() != 7 {
        return Err(format!("I2 has {} elements", s.len()));
    }
    let pi = |label: &str| -> Matrix {
        match label {
            "I" => mat(&[(0, 0, 1), (1, 1, 1), (2, 2, 1)]),
            "X" => mat(&[(0, 0, -1), (1, 2, 1), (2, 1, 1)]),
            "E11" => mat(&[(1, 1, 1)]),
            "E12" => mat(&[(1, 2, 1)]),
            "E21" => mat(&[(2, 1, 1)]),
            "E22" => mat(&[(2, 2, 1)]),
            _ => mat(&[]),
        }
    };
    for a in s.elements() {
        for b in s.elements() {
            if mat_mul(&pi(s.label(a)), &pi(s.label(b))) != pi(s.label(s.mul(a, b))) {
                return Err(format!("π is not multiplicative at ({}, {})", s.label(a), s.label(b)));
            }
        }
    }
    let mut combo = mat(&[]);
    for (label, sign) in [("I", 1), ("X", 1), ("E11", -1), ("E12", -1), ("E22", -1), ("E21", -1)] {
        let m = pi(label);
        for i in 0..3 {
            for j in 0..3 {
                combo[i][j] += Rational64::from_integer(sign) * m[i][j];
            }
        }
    }
    if combo != mat(&[]) {
        return Err(format!("π(I + X − E11 − E12 − E22 − E21) = {combo:?}"));
    }
    let z: Vec<usize> = centralizer(&s).into_iter().filter(|&a| a != s.zero()).collect();
    let flat: Vec<Vec<Rational64>> = z
        .iter()
        .map(|&a| pi(s.label(a)).iter().flatten().copied().collect())
        .collect();
    let rk = rank(flat);
    if rk != 3 || z.len() != 3 {
        return Err(format!("rank of π on Z(E) is {rk} over {} elements", z.len()));
    }

    let mut tested = 0usize;
    for (id, t) in semigroups {
        let mut homs: Vec<(InverseSemigroup, Vec<usize>)> = Vec::new();
        if let Ok(all) = enumerate_congruences(t, 10) {
            for c in all {
                let q = quotient(t, &c.partition).map_err(|e| e.to_string())?;
                homs.push((q.semigroup, q.projection));
            }
        }
        for ideal in enumerate_ideals(t).map_err(|e| e.to_string())? {
            let q = rees_quotient(t, &ideal.members).map_err(|e| e.to_string())?;
            homs.push((q.semigroup, q.projection));
        }
        for (target, map) in &homs {
            let phi = Homomorphism::new(t, target, map.clone()).map_err(|e| format!("{id}: {e}"))?;
            let r = injectivity_criteria(&phi).map_err(|e| format!("{id}: {e}"))?;
            if !r.consistent() {
                return Err(format!("{id}: {r:?}"));
            }
            tested += 1;
        }
        for ideal in enumerate_ideals(t).map_err(|e| e.to_string())? {
            let (sub, embed) = t.subsemigroup(&ideal.members).map_err(|e| e.to_string())?;
            let phi = Homomorphism::new(&sub, t, embed).map_err(|e| format!("{id}: {e}"))?;
            injectivity_criteria(&phi).map_err(|e| format!("{id}: {e}"))?;
            tested += 1;
        }
    }
    Ok(format!(
        "|I2| = 7, π(I + X − E11 − E12 − E22 − E21) = 0, rank 3 on Z(E); criteria agree on {tested}/{tested} homomorphisms"
    ))
}

fn criterion_3(semigroups: &[(String, InverseSemigroup)]) -> Outcome {
    for (id, s) in semigroups {
        let c = double_arrow(s).map_err(|e| format!("{id}: {e}"))?;
        if !c.is_zero_restricted {
            return Err(format!("{id}: ↔ is not 0-restricted"));
        }
        let q = quotient(s, &c.partition).map_err(|e| e.to_string())?;
        if !Semilattice::of(&q.semigroup).is_0_disjunctive().holds {
            return Err(format!("{id}: E(S/↔) is not 0-disjunctive"));
        }
    }
    Ok(format!("{} instances, 0 failures", semigroups.len()))
}

fn criterion_4(semigroups: &[(String, InverseSemigroup)]) -> Outcome {
    for (id, s) in semigroups {
        let c = double_arrow_isomorphism(s).map_err(|e| e.to_string())?;
        if !c.passed {
            return Err(format!("{id}: {:?}", c.counterexample));
        }
    }
    Ok(format!("{} instances, 0 failures", semigroups.len()))
}

fn criterion_5(semigroups: &[(String, InverseSemigroup)]) -> Outcome {
    let mut order_ideal_count = 0;
    let mut samples = 0;
    let mut round_trips = 0;
    for (k, (id, s)) in semigroups.iter().enumerate() {
        let space = FilterSpace::new(s).map_err(|e| e.to_string())?;
        for x in order_ideals(s).map_err(|e| e.to_string())? {
            if kernel(&space, s, &hull(&space, s, &x)) != x {
                return Err(format!("{id}: k(h(X)) ≠ X for X = {x:?}"));
            }
            order_ideal_count += 1;
        }
        let (n, outcome) = check_basic_sets(s, 8, 1000 + k as u64).map_err(|e| e.to_string())?;
        outcome.map_err(|e| format!("{id}: {e}"))?;
        samples += n;
        if Semilattice::of(s).has_trapping_condition().holds {
            for x in invariant_order_ideals(s).map_err(|e| e.to_string())? {
                if is_saturated_order_ideal(s, &x) {
                    if kernel(&space, s, &hull_tight(&space, s, &x)) != x {
                        return Err(format!("{id}: k(h_tight(X)) ≠ X for X = {x:?}"));
                    }
                    round_trips += 1;
                }
            }
            if let Ok(subsets) = space.invariant_subsets(s, true, DEFAULT_INVARIANT_SUBSET_ORBITS) {
                for a in subsets.subsets {
                    let mut back = hull_tight(&space, s, &kernel(&space, s, &a));
                    back.sort_unstable();
                    if back != a {
                        return Err(format!("{id}: h_tight(k(A)) ≠ A for A = {a:?}"));
                    }
                    round_trips += 1;
                }
            }
        }
    }
    if samples < 200 {
        return Err(format!("only {samples} basic-set samples"));
    }
    Ok(format!(
        "{order_ideal_count} order ideals, {samples} basic-set samples, {round_trips} tight round trips"
    ))
}

fn criterion_6(semigroups: &[(String, InverseSemigroup)]) -> Outcome {
    let mut checks = 0;
    for (id, s) in semigroups {
        for ideal in enumerate_ideals(s).map_err(|e| e.to_string())? {
            let modes: &[bool] = if ideal.saturated { &[false, true] } else { &[false] };
            for &tight in modes {
                for c in [
                    ideal_reduction(s, &ideal.members, tight).map_err(|e| e.to_string())?,
                    quotient_reduction(s, &ideal.members, tight).map_err(|e| e.to_string())?,
                ] {
                    if !c.passed {
                        return Err(format!("{id} {} {}: {:?}", c.theorem, c.instance, c.counterexample));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} isomorphisms with matching unit and arrow counts"))
}

fn criterion_7(semigroups: &[(String, InverseSemigroup)]) -> Outcome {
    for (id, s) in semigroups {
        let eff = FiniteGroupoid::tight(std::sync::Arc::new(s.clone()))
            .and_then(|g| g.effectiveness())
            .map_err(|e| e.to_string())?;
        let l = condition_l(s).map_err(|e| e.to_string())?;
        if l != eff.effective {
            return Err(format!("{id}: L {l}, effective {}", eff.effective));
        }
        let k = condition_k(s).map_err(|e| e.to_string())?;
        if k.trapping && !k.agrees {
            return Err(format!("{id}: K {}, strongly effective {}", k.value, k.strongly_effective));
        }
    }
    let pair = |s: &InverseSemigroup| (condition_l(s).unwrap(), condition_k(s).unwrap().value);
    let i2 = pair(&fixtures::i2());
    let z2 = pair(&fixtures::z2_with_zero());
    if i2 != (true, true) || z2 != (false, false) {
        return Err(format!("I2 (L,K) = {i2:?}, Z2 (L,K) = {z2:?}"));
    }
    Ok(format!("{} instances; I2 (L,K) = (T,T), Z2 with zero (L,K) = (F,F)", semigroups.len()))
}

fn criterion_8(semigroups: &[(String, InverseSemigroup)]) -> Outcome {
    let mut compared = 0;
    for (id, s) in semigroups.iter().filter(|(_, s)| s.len() <= 8) {
        let r = all_congruences_rees(s, 8).map_err(|e| e.to_string())?;
        if r.by_enumeration != Some(r.by_ideals) {
            return Err(format!("{id}: enumeration {:?}, per ideal {}", r.by_enumeration, r.by_ideals));
        }
        compared += 1;
    }
    let s = fixtures::i2();
    let r = all_congruences_rees(&s, 8).map_err(|e| e.to_string())?;
    let mut classes = r.non_rees_congruence.ok_or("no witness for I2")?.classes();
    classes.sort();
    let mut want = vec![set_of(&s, &["0", "E11", "E12", "E21", "E22"]), set_of(&s, &["I", "X"])];
    want.sort();
    if r.by_ideals || classes != want {
        return Err(format!("I2 value {}, witness {classes:?}", r.by_ideals));
    }
    Ok(format!("{compared}/{compared} agree; I2 false with {{0,E11,E12,E21,E22}},{{I,X}}"))
}

fn criterion_9() -> Outcome {
    let lkm = |g: &DirectedGraph| {
        let c = g.conditions();
        (c.l.holds, c.k.holds, c.m.holds)
    };
    let values = [
        ("L1", lkm(&fixtures::graph_l1()), (false, false, false)),
        ("R2", lkm(&fixtures::graph_r2()), (true, true, true)),
        ("A2", lkm(&fixtures::graph_a2()), (true, true, false)),
    ];
    for (name, got, want) in values {
        if got != want {
            return Err(format!("{name}: {got:?}"));
        }
    }
    let graphs = fixture_graphs();
    let mut exact = 0;
    for (name, g) in &graphs {
        let by_quotients = g.condition_m_by_quotients().map_err(|e| e.to_string())?;
        if by_quotients != g.condition_m().holds {
            return Err(format!("{name}: M by quotients {by_quotients}"));
        }
        if g.is_acyclic() {
            let (s, _) = exact_graph_semigroup(g).map_err(|e| e.to_string())?;
            let r = all_congruences_rees(&s, 10).map_err(|e| e.to_string())?;
            let all_rees = r.by_enumeration.unwrap_or(r.by_ideals);
            if all_rees != g.condition_m().holds || !r.agree() {
                return Err(format!("{name}: all Rees {all_rees}, M {}", g.condition_m().holds));
            }
            exact += 1;
        }
    }
    Ok(format!(
        "L1 FFF, R2 TTT, A2 TTF; quotient test on {} graphs; all-Rees iff M on {exact} exact semigroups",
        graphs.len()
    ))
}

fn criterion_10() -> Outcome {
    let a = fixtures::mirror();
    let report = a.validate_action(4).map_err(|e| e.to_string())?;
    let f = faithfulness(&a).map_err(|e| e.to_string())?;
    if !f.faithful || !f.strongly_faithful {
        return Err(format!("faithfulness {f:?}"));
    }
    let t = a.find_group_element("t").ok_or("no t")?;
    if !strongly_fixed_finite(&a, t) {
        return Err("t has infinitely many strongly fixed paths".into());
    }
    if !all_rees_ss(&a, 10).map_err(|e| e.to_string())?.value {
        return Err("all_rees_ss(MIRROR) is false".into());
    }
    let graphs = fixture_graphs();
    for (name, g) in &graphs {
        trivial_group_agreement(&SelfSimilarAction::trivial(g.clone())).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{} paths checked to depth 4; faithful, strongly faithful, t finite, all Rees; {} trivial-group graphs agree",
        report.paths_checked,
        graphs.len()
    ))
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let semigroups = semigroups();
    let results = [
        ("E4 kernel and hull", criterion_1()),
        ("I2 matrices and injectivity criteria", criterion_2(&semigroups)),
        ("double arrow congruence", criterion_3(&semigroups)),
        ("tight groupoid of the double-arrow quotient", criterion_4(&semigroups)),
        ("hull, kernel and basic sets", criterion_5(&semigroups)),
        ("ideal and quotient reductions", criterion_6(&semigroups)),
        ("conditions L, K and effectiveness", criterion_7(&semigroups)),
        ("all congruences Rees", criterion_8(&semigroups)),
        ("graph conditions", criterion_9()),
        ("self-similar actions", criterion_10()),
    ];
    let mut failed = Vec::new();
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => show(format!("criterion {:>2} PASS  {name}: {detail}", i + 1)),
            Err(detail) => {
                show(format!("criterion {:>2} FAIL  {name}: {detail}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    let elapsed = start.elapsed();
    show(format!("runtime {:.2}s (target < 60s)", elapsed.as_secs_f64()));
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    assert!(elapsed.as_secs() < 60);
}

/// Bypasses the harness's output capture so the lines appear in a plain
/// `cargo test` run.
fn show(line: String) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}
