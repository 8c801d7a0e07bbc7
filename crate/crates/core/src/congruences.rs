//! Congruences: closures, the full lattice for small semigroups, the `↔`
//! congruence, quotients, Rees congruences, and the characterizations built on
//! them.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals_filters::enumerate_ideals;
use crate::relations::{is_fundamental, Partition, UnionFind};
use crate::semigroup::{Elem, InverseSemigroup};
use crate::semilattice::Semilattice;

/// Default size bound for full congruence enumeration.
pub const DEFAULT_ENUMERATE_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    pub partition: Partition,
    pub is_rees: bool,
    pub is_zero_restricted: bool,
    pub is_idempotent_separating: bool,
}

impl Congruence {
    /// Wraps a partition after checking it is a congruence.
    pub fn new(s: &InverseSemigroup, partition: Partition) -> Result<Self> {
        partition.check_congruence(s)?;
        Ok(Self::flagged(s, partition))
    }

    fn flagged(s: &InverseSemigroup, partition: Partition) -> Self {
        let z = partition.class_of(s.zero());
        let is_rees = s
            .elements()
            .all(|a| partition.class_of(a) == z || partition.class_members(a).len() == 1);
        let is_zero_restricted = s.elements().all(|a| a == s.zero() || partition.class_of(a) != z);
        let idem = s.idempotents();
        let is_idempotent_separating = idem
            .iter()
            .enumerate()
            .all(|(i, &e)| idem[i + 1..].iter().all(|&f| !partition.related(e, f)));
        Self {
            partition,
            is_rees,
            is_zero_restricted,
            is_idempotent_separating,
        }
    }

    pub fn equality(s: &InverseSemigroup) -> Self {
        Self::flagged(s, Partition::equality(s.len()))
    }

    pub fn universal(s: &InverseSemigroup) -> Self {
        Self::flagged(s, Partition::universal(s.len()))
    }
}

/// Least congruence containing the given pairs.
pub fn congruence_closure(s: &InverseSemigroup, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = s.len();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(Elem, Elem)> = VecDeque::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    // every merge is recorded once; compatibility of the generating pairs
    // implies compatibility of the whole relation
    while let Some((a, b)) = queue.pop_front() {
        for c in 0..n {
            for (x, y) in [(s.mul(c, a), s.mul(c, b)), (s.mul(a, c), s.mul(b, c))] {
                if uf.union(x, y) {
                    queue.push_back((x, y));
                }
            }
        }
    }
    Congruence::flagged(s, uf.partition())
}

/// The whole congruence lattice, as joins of principal congruences.
pub fn enumerate_congruences(s: &InverseSemigroup, bound: usize) -> Result<Vec<Congruence>> {
    let n = s.len();
    if n > bound {
        return Err(Error::TooLarge {
            what: "congruence enumeration",
            size: n,
            bound,
        });
    }
    let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let principal: BTreeSet<Partition> = pairs
        .par_iter()
        .map(|&p| congruence_closure(s, &[p]).partition)
        .collect();
    let principal: Vec<Partition> = principal.into_iter().collect();

    let mut all: BTreeSet<Partition> = BTreeSet::new();
    let mut frontier: Vec<Partition> = vec![Partition::equality(n)];
    all.insert(Partition::equality(n));
    while !frontier.is_empty() {
        let joins: BTreeSet<Partition> = frontier
            .par_iter()
            .flat_map_iter(|x| principal.iter().map(move |p| x.join(p)))
            .collect();
        frontier = joins.into_iter().filter(|j| all.insert(j.clone())).collect();
    }
    Ok(all.into_iter().map(|p| Congruence::flagged(s, p)).collect())
}

/// Nonzero down-sets `x↓ \ {0}` as bitsets.
fn nonzero_down_sets(s: &InverseSemigroup) -> Vec<FixedBitSet> {
    let n = s.len();
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for t in 0..n {
        let e = s.source(t);
        for (x, row) in down.iter_mut().enumerate() {
            // t ≤ x iff t = x·t*t
            if t != s.zero() && s.mul(x, e) == t {
                row.insert(t);
            }
        }
    }
    down
}

/// `a → b`: every `0 < x ≤ a` has `x↓ ∩ b↓ ≠ {0}`.
pub fn arrow_relation(s: &InverseSemigroup) -> Vec<FixedBitSet> {
    let n = s.len();
    let down = nonzero_down_sets(s);
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(n);
            for b in 0..n {
                if down[a].ones().all(|x| !down[x].is_disjoint(&down[b])) {
                    row.insert(b);
                }
            }
            row
        })
        .collect()
}

/// `↔ = → ∩ ←`, checked to be a 0-restricted congruence.
pub fn double_arrow(s: &InverseSemigroup) -> Result<Congruence> {
    let arrow = arrow_relation(s);
    let n = s.len();
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        for b in arrow[a].ones() {
            if b > a && arrow[b].contains(a) {
                uf.union(a, b);
            }
        }
    }
    let partition = uf.partition();
    // the union-find closure must not have added pairs: ↔ is transitive
    for a in 0..n {
        for b in partition.class_members(a) {
            if !(arrow[a].contains(b) && arrow[b].contains(a)) {
                return Err(Error::InternalContract(format!("double arrow is not transitive at ({a},{b})")));
            }
        }
    }
    let c = Congruence::new(s, partition).map_err(|e| Error::InternalContract(format!("double arrow: {e}")))?;
    if !c.is_zero_restricted {
        return Err(Error::InternalContract("double arrow is not 0-restricted".into()));
    }
    Ok(c)
}

/// `S/ρ` with its projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub semigroup: InverseSemigroup,
    pub projection: Vec<Elem>,
}

pub fn quotient(s: &InverseSemigroup, partition: &Partition) -> Result<Quotient> {
    partition.check_congruence(s)?;
    let classes = partition.classes();
    let m = classes.len();
    let reps: Vec<Elem> = classes.iter().map(|c| c[0]).collect();
    let mut mul = vec![0; m * m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * m + j] = partition.class_of(s.mul(a, b));
        }
    }
    let inv = reps.iter().map(|&a| partition.class_of(s.inv(a))).collect();
    let labels = classes
        .iter()
        .map(|c| {
            if c.contains(&s.zero()) {
                "0".to_string()
            } else if c.len() == 1 {
                s.label(c[0]).to_string()
            } else {
                format!("[{}]", s.label(c[0]))
            }
        })
        .collect();
    Ok(Quotient {
        semigroup: InverseSemigroup::from_parts(mul, inv, partition.class_of(s.zero()), labels),
        projection: partition.class_indices().to_vec(),
    })
}

/// The Rees congruence of an ideal: the ideal collapses to zero.
pub fn rees_congruence(s: &InverseSemigroup, ideal: &[Elem]) -> Result<Congruence> {
    if !s.is_ideal(ideal) {
        return Err(Error::NotIdeal(format!("{ideal:?} is not an ideal")));
    }
    let member = s.membership(ideal);
    let labels: Vec<usize> = s.elements().map(|a| if member[a] { usize::MAX } else { a }).collect();
    Ok(Congruence::flagged(s, Partition::from_labels(&labels)))
}

pub fn rees_quotient(s: &InverseSemigroup, ideal: &[Elem]) -> Result<Quotient> {
    let c = rees_congruence(s, ideal)?;
    quotient(s, &c.partition)
}

/// Result of deciding whether every congruence is a Rees congruence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllReesReport {
    /// Answer from full enumeration; `None` when the semigroup exceeds the bound.
    pub by_enumeration: Option<bool>,
    /// Answer from the per-ideal test: every `S/I` is fundamental with a
    /// 0-disjunctive semilattice.
    pub by_ideals: bool,
    pub non_rees_congruence: Option<Partition>,
    pub failing_ideal: Option<Vec<Elem>>,
}

impl AllReesReport {
    pub fn value(&self) -> bool {
        self.by_ideals
    }

    pub fn agree(&self) -> bool {
        self.by_enumeration.is_none_or(|a| a == self.by_ideals)
    }
}

pub fn all_congruences_rees(s: &InverseSemigroup, bound: usize) -> Result<AllReesReport> {
    let mut failing_ideal = None;
    for ideal in enumerate_ideals(s)? {
        let q = rees_quotient(s, &ideal.members)?.semigroup;
        if !is_fundamental(&q) || !Semilattice::of(&q).is_0_disjunctive().holds {
            failing_ideal = Some(ideal.members);
            break;
        }
    }
    let (by_enumeration, non_rees_congruence) = match enumerate_congruences(s, bound) {
        Ok(all) => {
            let witness = all.into_iter().find(|c| !c.is_rees).map(|c| c.partition);
            (Some(witness.is_none()), witness)
        }
        Err(Error::TooLarge { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(AllReesReport {
        by_enumeration,
        by_ideals: failing_ideal.is_none(),
        non_rees_congruence,
        failing_ideal,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceFreeReport {
    pub value: bool,
    pub fundamental: bool,
    pub zero_simple: bool,
    pub zero_disjunctive: bool,
    /// Whether enumeration finds exactly equality and the universal relation.
    pub by_enumeration: Option<bool>,
}

/// Congruence-free means the only congruences are equality and the universal
/// relation. The one-element semigroup is congruence-free by definition.
pub fn is_congruence_free(s: &InverseSemigroup, bound: usize) -> Result<CongruenceFreeReport> {
    let fundamental = is_fundamental(s);
    let ideals = enumerate_ideals(s)?;
    let zero_simple = ideals
        .iter()
        .all(|i| i.members.len() == 1 || i.members.len() == s.len());
    let zero_disjunctive = Semilattice::of(s).is_0_disjunctive().holds;
    let by_enumeration = match enumerate_congruences(s, bound) {
        Ok(all) => Some(all.iter().all(|c| c.partition.is_equality() || c.partition.is_universal())),
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CongruenceFreeReport {
        value: s.len() == 1 || (fundamental && zero_simple && zero_disjunctive),
        fundamental,
        zero_simple,
        zero_disjunctive,
        by_enumeration,
    })
}

/// `S/↔` is fundamental.
pub fn condition_l(s: &InverseSemigroup) -> Result<bool> {
    let c = double_arrow(s)?;
    Ok(is_fundamental(&quotient(s, &c.partition)?.semigroup))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids<const N: usize>(s: &InverseSemigroup, labels: [&str; N]) -> Vec<Elem> {
        let mut v: Vec<Elem> = labels.iter().map(|l| s.find(l).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn closure_of_identity_and_swap() {
        let s = fixtures::i2();
        let [i, x] = ["I", "X"].map(|l| s.find(l).unwrap());
        let c = congruence_closure(&s, &[(i, x)]);
        let mut classes = c.partition.classes();
        classes.sort();
        let mut want = vec![ids(&s, ["0", "E11", "E12", "E21", "E22"]), ids(&s, ["I", "X"])];
        want.sort();
        assert_eq!(classes, want);
        assert!(!c.is_rees);
    }

    #[test]
    fn closure_of_nothing_is_equality() {
        let s = fixtures::i2();
        assert!(congruence_closure(&s, &[]).partition.is_equality());
    }

    #[test]
    fn closure_of_atom_with_zero_is_rees() {
        let s = fixtures::i2();
        let e11 = s.find("E11").unwrap();
        let c = congruence_closure(&s, &[(e11, s.zero())]);
        let j = ids(&s, ["0", "E11", "E12", "E21", "E22"]);
        assert_eq!(c, rees_congruence(&s, &j).unwrap());
        assert!(c.is_rees);
    }

    #[test]
    fn e4_double_arrow() {
        let s = fixtures::e4();
        let c = double_arrow(&s).unwrap();
        let mut classes = c.partition.classes();
        classes.sort();
        let mut want = vec![ids(&s, ["0"]), ids(&s, ["e"]), ids(&s, ["f", "g"])];
        want.sort();
        assert_eq!(classes, want);
        let q = quotient(&s, &c.partition).unwrap().semigroup;
        assert_eq!(q.len(), 3);
        assert!(Semilattice::of(&q).is_0_disjunctive().holds);
    }

    #[test]
    fn double_arrow_is_equality_when_expected() {
        for s in [fixtures::i2(), fixtures::two_element(), fixtures::z2_with_zero()] {
            assert!(double_arrow(&s).unwrap().partition.is_equality());
        }
    }

    #[test]
    fn rees_quotient_of_i2() {
        let s = fixtures::i2();
        let j = ids(&s, ["0", "E11", "E12", "E21", "E22"]);
        let q = rees_quotient(&s, &j).unwrap().semigroup;
        q.validate().unwrap();
        assert_eq!(q.len(), 3);
        assert!(!is_fundamental(&q));
        assert!(rees_congruence(&s, &[s.zero()]).unwrap().partition.is_equality());
        let all: Vec<Elem> = s.elements().collect();
        assert!(rees_congruence(&s, &all).unwrap().partition.is_universal());
        let e11 = s.find("E11").unwrap();
        assert!(matches!(rees_congruence(&s, &[s.zero(), e11]), Err(Error::NotIdeal(_))));
    }

    #[test]
    fn enumeration_examples() {
        let s = fixtures::zero_semigroup();
        assert_eq!(enumerate_congruences(&s, 10).unwrap().len(), 1);

        let s = fixtures::i2();
        let all = enumerate_congruences(&s, 10).unwrap();
        let non_rees: Vec<_> = all.iter().filter(|c| !c.is_rees).collect();
        assert_eq!(non_rees.len(), 1);
        let mut classes = non_rees[0].partition.classes();
        classes.sort();
        let mut want = vec![ids(&s, ["0", "E11", "E12", "E21", "E22"]), ids(&s, ["I", "X"])];
        want.sort();
        assert_eq!(classes, want);
        assert_eq!(all.len(), 4);

        let s = fixtures::e4();
        let all = enumerate_congruences(&s, 10).unwrap();
        let da = double_arrow(&s).unwrap();
        assert!(all.contains(&da));
        assert!(all.iter().any(|c| c.partition.is_equality()));
        assert!(all.iter().any(|c| c.partition.is_universal()));

        assert!(matches!(
            enumerate_congruences(&fixtures::symmetric_inverse_monoid(3), 10),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn all_rees_examples() {
        let r = all_congruences_rees(&fixtures::i2(), 10).unwrap();
        assert_eq!((r.by_enumeration, r.by_ideals), (Some(false), false));
        let s = fixtures::i2();
        assert_eq!(r.failing_ideal, Some(ids(&s, ["0", "E11", "E12", "E21", "E22"])));

        let r = all_congruences_rees(&fixtures::zero_semigroup(), 10).unwrap();
        assert_eq!((r.by_enumeration, r.by_ideals), (Some(true), true));

        let s = fixtures::e4();
        let r = all_congruences_rees(&s, 10).unwrap();
        assert_eq!((r.by_enumeration, r.by_ideals), (Some(false), false));
    }

    #[test]
    fn congruence_free_examples() {
        assert!(!is_congruence_free(&fixtures::i2(), 10).unwrap().value);
        let r = is_congruence_free(&fixtures::two_element(), 10).unwrap();
        assert!(r.value);
        assert_eq!(r.by_enumeration, Some(true));
        let r = is_congruence_free(&fixtures::e4(), 10).unwrap();
        assert!(!r.value);
        assert_eq!(r.by_enumeration, Some(false));
        assert!(is_congruence_free(&fixtures::zero_semigroup(), 10).unwrap().value);
    }

    #[test]
    fn condition_l_examples() {
        assert!(condition_l(&fixtures::i2()).unwrap());
        assert!(condition_l(&fixtures::e4()).unwrap());
        assert!(!condition_l(&fixtures::z2_with_zero()).unwrap());
    }
}
