//! The builtin corpus and loading of corpus directories.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::graphs::DirectedGraph;
use crate::selfsimilar::SelfSimilarAction;
use crate::semigroup::{InverseSemigroup, PartialBijection, SemigroupInput};

pub const DEFAULT_SEED: u64 = 0x15_6e_77;
/// Random subsemigroups larger than this are discarded.
pub const DEFAULT_MAX_RANDOM_ELEMENTS: usize = 80;
pub const DEFAULT_RANDOM_COUNT: usize = 12;

#[derive(Debug, Clone)]
pub enum Instance {
    Semigroup(InverseSemigroup),
    Graph(DirectedGraph),
    Action(SelfSimilarAction),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Semigroup(_) => "semigroup",
            Instance::Graph(_) => "graph",
            Instance::Action(_) => "selfsimilar",
        }
    }

    /// Reads a corpus file. An explicit `"kind"` wins; otherwise the kind is
    /// inferred from the keys present.
    pub fn from_json(text: &str, max_elements: usize) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let kind = match value.get("kind").and_then(Value::as_str) {
            Some(k) => k.to_string(),
            None if value.get("group").is_some() => "selfsimilar".into(),
            None if value.get("edges").is_some() => "graph".into(),
            None => "semigroup".into(),
        };
        match kind.as_str() {
            "semigroup" | "semilattice" => {
                let input: SemigroupInput =
                    serde_json::from_value(strip_kind(value)).map_err(|e| Error::Parse(e.to_string()))?;
                Ok(Instance::Semigroup(input.build(max_elements)?))
            }
            "graph" => Ok(Instance::Graph(DirectedGraph::from_json_value(&value)?)),
            "selfsimilar" => Ok(Instance::Action(SelfSimilarAction::from_json(text)?)),
            other => Err(Error::Parse(format!("unknown instance kind {other:?}"))),
        }
    }
}

fn strip_kind(mut value: Value) -> Value {
    if let Some(obj) = value.as_object_mut() {
        obj.remove("kind");
        obj.remove("id");
    }
    value
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub instance: Instance,
}

impl CorpusEntry {
    fn new(id: impl Into<String>, instance: Instance) -> Self {
        Self {
            id: id.into(),
            instance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub random_count: usize,
    pub max_random_elements: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            random_count: DEFAULT_RANDOM_COUNT,
            max_random_elements: DEFAULT_MAX_RANDOM_ELEMENTS,
        }
    }
}

/// Every meet semilattice with zero of at most `max` elements, one per
/// isomorphism class. Each is realised by partial identities on `max - 1`
/// points through `x ↦ {nonzero y ≤ x}`, so enumerating intersection-closed
/// families of subsets that contain the empty set reaches all of them.
pub fn small_semilattices(max: usize) -> Vec<InverseSemigroup> {
    let points = max.saturating_sub(1).max(1);
    let universe: Vec<u32> = (1..1u32 << points).collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        universe: &[u32],
        start: usize,
        chosen: &mut Vec<u32>,
        max: usize,
        points: usize,
        seen: &mut std::collections::HashSet<Vec<u64>>,
        out: &mut Vec<InverseSemigroup>,
    ) {
        if is_meet_closed(chosen) {
            let key = canonical_order(chosen);
            if seen.insert(key) {
                out.push(semilattice_of_sets(chosen, points));
            }
        }
        if chosen.len() + 1 >= max {
            return;
        }
        for i in start..universe.len() {
            chosen.push(universe[i]);
            rec(universe, i + 1, chosen, max, points, seen, out);
            chosen.pop();
        }
    }
    rec(&universe, 0, &mut chosen, max, points, &mut seen, &mut out);
    out
}

/// Closed under intersection, where an empty intersection is the zero.
fn is_meet_closed(sets: &[u32]) -> bool {
    sets.iter()
        .all(|&a| sets.iter().all(|&b| a & b == 0 || sets.contains(&(a & b))))
}

/// Lexicographically least order matrix over all relabellings.
fn canonical_order(sets: &[u32]) -> Vec<u64> {
    let n = sets.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let rows: Vec<u64> = (0..n)
            .map(|i| {
                (0..n).fold(0u64, |acc, j| {
                    let (a, b) = (sets[perm[i]], sets[perm[j]]);
                    acc << 1 | u64::from(a & b == a)
                })
            })
            .collect();
        if best.as_ref().is_none_or(|b| rows < *b) {
            best = Some(rows);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut key = best.unwrap_or_default();
    key.insert(0, n as u64);
    key
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn semilattice_of_sets(sets: &[u32], points: usize) -> InverseSemigroup {
    let mut gens: Vec<PartialBijection> = sets
        .iter()
        .map(|&m| {
            let pts: Vec<usize> = (0..points).filter(|&p| m >> p & 1 == 1).collect();
            PartialBijection::partial_identity(points, &pts)
        })
        .collect();
    gens.push(PartialBijection::empty(points));
    InverseSemigroup::from_generators(&gens, 64).expect("semilattices are small")
}

fn random_partial_bijection(rng: &mut ChaCha8Rng, degree: usize) -> PartialBijection {
    let mut targets: Vec<usize> = (0..degree).collect();
    for i in (1..degree).rev() {
        targets.swap(i, rng.gen_range(0..=i));
    }
    let images = targets
        .into_iter()
        .map(|t| if rng.gen_bool(0.7) { Some(t) } else { None })
        .collect();
    PartialBijection::new(images).expect("a permutation restricted is injective")
}

/// Inverse subsemigroups of `I_3` and `I_4` generated by two or three random
/// partial bijections. Deterministic in the seed.
pub fn random_subsemigroups(seed: u64, count: usize, max_elements: usize) -> Vec<(String, InverseSemigroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let degree = if rng.gen_bool(0.5) { 3 } else { 4 };
        let ngens = rng.gen_range(2..=3);
        let gens: Vec<PartialBijection> = (0..ngens).map(|_| random_partial_bijection(&mut rng, degree)).collect();
        let Ok(s) = InverseSemigroup::from_generators(&gens, max_elements) else {
            continue;
        };
        if s.len() < 3 {
            continue;
        }
        out.push((format!("random-I{degree}-{attempts}"), s));
    }
    out
}

pub fn builtin(config: &CorpusConfig) -> Vec<CorpusEntry> {
    use Instance::*;
    let mut out = vec![
        CorpusEntry::new("I2", Semigroup(fixtures::i2())),
        CorpusEntry::new("E4", Semigroup(fixtures::e4())),
        CorpusEntry::new("Z2-with-zero", Semigroup(fixtures::z2_with_zero())),
        CorpusEntry::new("I3", Semigroup(fixtures::symmetric_inverse_monoid(3))),
    ];
    for (i, s) in small_semilattices(5).into_iter().enumerate() {
        out.push(CorpusEntry::new(format!("semilattice-{}-{i}", s.len()), Semigroup(s)));
    }
    for (id, s) in random_subsemigroups(config.seed, config.random_count, config.max_random_elements) {
        out.push(CorpusEntry::new(id, Semigroup(s)));
    }
    let mut graphs = vec![
        ("L1", fixtures::graph_l1()),
        ("R2", fixtures::graph_r2()),
        ("A2", fixtures::graph_a2()),
        ("P2", fixtures::graph_p2()),
    ];
    graphs.extend(fixtures::assorted_graphs());
    for (id, g) in &graphs {
        out.push(CorpusEntry::new(*id, Graph(g.clone())));
    }
    for (id, g) in graphs {
        out.push(CorpusEntry::new(format!("trivial-{id}"), Action(SelfSimilarAction::trivial(g))));
    }
    out.push(CorpusEntry::new("MIRROR", Action(fixtures::mirror())));
    out.push(CorpusEntry::new("TRIVIAL-Z2-R2", Action(fixtures::trivial_z2_on_r2())));
    out.push(CorpusEntry::new("SWAP", Action(fixtures::swap())));
    out
}

/// Every `*.json` file in `dir`, sorted by file name; the id is the file stem.
pub fn load_dir(dir: &Path, max_elements: usize) -> Result<Vec<CorpusEntry>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            let instance = Instance::from_json(&text, max_elements)
                .map_err(|e| match e {
                    Error::Parse(m) => Error::Parse(format!("{}: {m}", p.display())),
                    other => other,
                })?;
            let id = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(CorpusEntry::new(id, instance))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semilattice_counts_up_to_isomorphism() {
        // meet semilattices with zero of sizes 1..=5
        let by_size = |n: usize| small_semilattices(5).iter().filter(|s| s.len() == n).count();
        assert_eq!(by_size(1), 1);
        assert_eq!(by_size(2), 1);
        assert_eq!(by_size(3), 2);
        assert_eq!(by_size(4), 5);
        assert_eq!(by_size(5), 15);
    }

    #[test]
    fn random_corpus_is_deterministic() {
        let a = random_subsemigroups(7, 4, 40);
        let b = random_subsemigroups(7, 4, 40);
        assert_eq!(a.len(), 4);
        for ((ia, sa), (ib, sb)) in a.iter().zip(&b) {
            assert_eq!(ia, ib);
            assert_eq!(sa.labels(), sb.labels());
            assert!(sa.len() <= 40);
        }
    }

    #[test]
    fn kind_inference() {
        let s = Instance::from_json(r#"{"degree":2,"generators":[[1,0]]}"#, 100).unwrap();
        assert_eq!(s.kind(), "semigroup");
        let g = Instance::from_json(r#"{"vertices":1,"edges":[{"id":"e","src":0,"rng":0}]}"#, 100).unwrap();
        assert_eq!(g.kind(), "graph");
        assert!(matches!(Instance::from_json(r#"{"kind":"bogus"}"#, 100), Err(Error::Parse(_))));
    }
}
