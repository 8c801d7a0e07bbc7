//! Green's `H`, the congruence `μ`, the centralizer of `E(S)` and injectivity
//! of homomorphisms.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, InverseSemigroup};

/// An equivalence relation on `0..n`, stored as a class index per element.
/// Classes are numbered in order of their least element, so two partitions are
/// equal exactly when their `class_of` vectors are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    class_of: Vec<usize>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling of classes.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut seen: HashMap<&T, usize> = HashMap::new();
        let class_of = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(l).or_insert(next)
            })
            .collect();
        Self { class_of }
    }

    pub fn from_classes(n: usize, classes: &[Vec<Elem>]) -> Self {
        let mut label = (0..n).map(|i| (usize::MAX, i)).collect::<Vec<_>>();
        for (c, members) in classes.iter().enumerate() {
            for &m in members {
                label[m] = (c, 0);
            }
        }
        Self::from_labels(&label)
    }

    pub fn equality(n: usize) -> Self {
        Self {
            class_of: (0..n).collect(),
        }
    }

    pub fn universal(n: usize) -> Self {
        Self {
            class_of: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_of(&self, a: Elem) -> usize {
        self.class_of[a]
    }

    pub fn class_indices(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Classes as sorted member lists, ordered by least member.
    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (a, &c) in self.class_of.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    pub fn class_members(&self, a: Elem) -> Vec<Elem> {
        let c = self.class_of[a];
        (0..self.len()).filter(|&x| self.class_of[x] == c).collect()
    }

    pub fn is_equality(&self) -> bool {
        self.num_classes() == self.len()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image: Vec<Option<usize>> = vec![None; self.num_classes()];
        for a in 0..self.len() {
            let c = self.class_of[a];
            match image[c] {
                None => image[c] = Some(other.class_of[a]),
                Some(d) if d != other.class_of[a] => return false,
                Some(_) => {}
            }
        }
        true
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let labels: Vec<(usize, usize)> = (0..self.len())
            .map(|a| (self.class_of[a], other.class_of[a]))
            .collect();
        Self::from_labels(&labels)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            let mut first: Vec<Option<usize>> = vec![None; p.num_classes()];
            for a in 0..p.len() {
                match first[p.class_of[a]] {
                    None => first[p.class_of[a]] = Some(a),
                    Some(r) => {
                        uf.union(r, a);
                    }
                }
            }
        }
        uf.partition()
    }

    /// Checks compatibility with multiplication; the error names a related pair
    /// whose products are not related.
    pub fn check_congruence(&self, s: &InverseSemigroup) -> Result<()> {
        let n = s.len();
        assert_eq!(n, self.len(), "partition size differs from semigroup size");
        // related to its class's first member suffices by transitivity
        let mut first: Vec<Option<usize>> = vec![None; self.num_classes()];
        for a in 0..n {
            let c = self.class_of[a];
            let Some(r) = first[c] else {
                first[c] = Some(a);
                continue;
            };
            for x in 0..n {
                if !self.related(s.mul(x, a), s.mul(x, r)) {
                    return Err(Error::NotCongruence {
                        a: r,
                        b: a,
                        detail: format!("left multiplication by {x} separates them"),
                    });
                }
                if !self.related(s.mul(a, x), s.mul(r, x)) {
                    return Err(Error::NotCongruence {
                        a: r,
                        b: a,
                        detail: format!("right multiplication by {x} separates them"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_congruence(&self, s: &InverseSemigroup) -> bool {
        self.check_congruence(s).is_ok()
    }

    /// Renders classes with semigroup labels, e.g. `{0,E11},{I,X}`.
    pub fn display_with(&self, s: &InverseSemigroup) -> String {
        self.classes()
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&a| s.label(a)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns true when the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|a| self.find(a)).collect();
        Partition::from_labels(&roots)
    }
}

/// `H`: `s*s = t*t` and `ss* = tt*`.
pub fn green_h(s: &InverseSemigroup) -> Partition {
    let keys: Vec<(Elem, Elem)> = s.elements().map(|a| (s.source(a), s.range(a))).collect();
    Partition::from_labels(&keys)
}

/// `μ`: `ses* = tet*` for every idempotent `e`.
pub fn mu(s: &InverseSemigroup) -> Partition {
    let keys: Vec<Vec<Elem>> = s
        .elements()
        .map(|a| s.idempotents().iter().map(|&e| s.mul(s.mul(a, e), s.inv(a))).collect())
        .collect();
    Partition::from_labels(&keys)
}

pub fn is_fundamental(s: &InverseSemigroup) -> bool {
    mu(s).is_equality()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenSummary {
    pub h: Partition,
    pub mu: Partition,
    pub cryptic: bool,
    pub fundamental: bool,
}

pub fn h_and_mu(s: &InverseSemigroup) -> GreenSummary {
    let h = green_h(s);
    let mu = mu(s);
    GreenSummary {
        cryptic: h == mu,
        fundamental: mu.is_equality(),
        h,
        mu,
    }
}

/// `Z = {s : se = es for all e ∈ E(S)}`
pub fn centralizer(s: &InverseSemigroup) -> Vec<Elem> {
    s.elements()
        .filter(|&a| s.idempotents().iter().all(|&e| s.mul(a, e) == s.mul(e, a)))
        .collect()
}

/// A zero-preserving homomorphism of inverse semigroups.
#[derive(Debug, Clone)]
pub struct Homomorphism<'a> {
    source: &'a InverseSemigroup,
    target: &'a InverseSemigroup,
    map: Vec<Elem>,
}

impl<'a> Homomorphism<'a> {
    pub fn new(source: &'a InverseSemigroup, target: &'a InverseSemigroup, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::NotHomomorphism(format!(
                "map has {} entries for {} elements",
                map.len(),
                source.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::NotHomomorphism(format!("image {bad} out of range")));
        }
        if map[source.zero()] != target.zero() {
            return Err(Error::NotHomomorphism("zero is not sent to zero".into()));
        }
        for a in source.elements() {
            if map[source.inv(a)] != target.inv(map[a]) {
                return Err(Error::NotHomomorphism(format!("inverse of {} not preserved", source.label(a))));
            }
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "product {}*{} not preserved",
                        source.label(a),
                        source.label(b)
                    )));
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(s: &'a InverseSemigroup) -> Self {
        Self {
            source: s,
            target: s,
            map: s.elements().collect(),
        }
    }

    pub fn source(&self) -> &'a InverseSemigroup {
        self.source
    }

    pub fn target(&self) -> &'a InverseSemigroup {
        self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub injective: bool,
    pub injective_on_centralizer: bool,
    pub idempotent_pure: bool,
    pub idempotent_separating: bool,
}

impl InjectivityReport {
    /// Injective, injective on `Z`, and (pure and separating) all coincide.
    pub fn consistent(&self) -> bool {
        let third = self.idempotent_pure && self.idempotent_separating;
        self.injective == self.injective_on_centralizer && self.injective == third
    }
}

fn injective_on(map: &[Elem], domain: impl Iterator<Item = Elem>) -> bool {
    let mut seen = HashMap::new();
    domain.into_iter().all(|a| seen.insert(map[a], a).is_none())
}

/// Evaluates the three injectivity criteria. Disagreement among them is a
/// library bug and is reported as [`Error::InternalContract`].
pub fn injectivity_criteria(phi: &Homomorphism<'_>) -> Result<InjectivityReport> {
    let s = phi.source;
    let t = phi.target;
    let report = InjectivityReport {
        injective: injective_on(&phi.map, s.elements()),
        injective_on_centralizer: injective_on(&phi.map, centralizer(s).into_iter()),
        idempotent_pure: s
            .elements()
            .all(|a| !t.is_idempotent(phi.map[a]) || s.is_idempotent(a)),
        idempotent_separating: injective_on(&phi.map, s.idempotents().iter().copied()),
    };
    if !report.consistent() {
        return Err(Error::InternalContract(format!("injectivity criteria disagree: {report:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn partition_canonical_form() {
        let p = Partition::from_labels(&[7, 3, 7, 9]);
        assert_eq!(p.class_indices(), &[0, 1, 0, 2]);
        assert_eq!(p.classes(), vec![vec![0, 2], vec![1], vec![3]]);
        let q = Partition::from_classes(4, &[vec![1, 3]]);
        assert_eq!(q.classes(), vec![vec![0], vec![1, 3], vec![2]]);
        assert_eq!(p.join(&q).classes(), vec![vec![0, 2], vec![1, 3]]);
        assert!(p.meet(&q).is_equality());
        assert!(Partition::equality(4).refines(&p));
        assert!(!p.refines(&q));
    }

    #[test]
    fn i2_green_and_mu() {
        let s = fixtures::i2();
        let g = h_and_mu(&s);
        let [i, x] = ["I", "X"].map(|l| s.find(l).unwrap());
        let mut hi = g.h.class_members(i);
        hi.sort();
        let mut want = vec![i, x];
        want.sort();
        assert_eq!(hi, want);
        assert_eq!(g.mu.class_members(i), vec![i]);
        assert!(!g.cryptic);
        assert!(g.fundamental);
    }

    #[test]
    fn semilattice_is_fundamental() {
        let g = h_and_mu(&fixtures::e4());
        assert!(g.h.is_equality() && g.mu.is_equality() && g.fundamental && g.cryptic);
    }

    #[test]
    fn z2_with_zero_is_not_fundamental() {
        let s = fixtures::z2_with_zero();
        let [one, x] = ["1", "x"].map(|l| s.find(l).unwrap());
        let g = h_and_mu(&s);
        assert!(g.mu.related(one, x));
        assert!(!g.fundamental);
    }

    #[test]
    fn centralizers() {
        let s = fixtures::i2();
        let mut z = centralizer(&s);
        z.sort();
        let mut e = s.idempotents().to_vec();
        e.sort();
        assert_eq!(z, e);
        let s = fixtures::z2_with_zero();
        assert_eq!(centralizer(&s).len(), s.len());
        let s = fixtures::e4();
        assert_eq!(centralizer(&s).len(), 4);
    }

    #[test]
    fn identity_homomorphism_is_injective() {
        let s = fixtures::i2();
        let r = injectivity_criteria(&Homomorphism::identity(&s)).unwrap();
        assert!(r.injective && r.injective_on_centralizer && r.idempotent_pure && r.idempotent_separating);
    }

    #[test]
    fn inclusion_into_e4() {
        let s = fixtures::e4();
        let e = s.find("e").unwrap();
        let (sub, embed) = s.subsemigroup(&[s.zero(), e]).unwrap();
        let phi = Homomorphism::new(&sub, &s, embed).unwrap();
        let r = injectivity_criteria(&phi).unwrap();
        assert!(r.injective && r.consistent());
    }

    #[test]
    fn rejects_non_homomorphism() {
        let s = fixtures::i2();
        let mut map: Vec<Elem> = s.elements().collect();
        map.swap(s.find("E11").unwrap(), s.find("E22").unwrap());
        assert!(matches!(Homomorphism::new(&s, &s, map), Err(Error::NotHomomorphism(_))));
    }
}
