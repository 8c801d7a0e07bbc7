//! Finite inverse semigroups given by generating partial bijections or by
//! explicit Cayley tables.
//!
//! Elements are dense indices `0..n`. Every semigroup carries a zero; when a
//! generated closure has no absorbing element the empty map is adjoined.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element of a finite inverse semigroup.
pub type Elem = usize;

/// Default cap on the number of elements produced by a generator closure.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// A partial injective map on `{0, …, degree-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    images: Vec<Option<usize>>,
}

impl PartialBijection {
    pub fn new(images: Vec<Option<usize>>) -> Result<Self> {
        let degree = images.len();
        if degree == 0 {
            return Err(Error::Parse("partial bijection of degree 0".into()));
        }
        let mut hit = vec![false; degree];
        for (x, y) in images.iter().enumerate() {
            if let Some(y) = *y {
                if y >= degree {
                    return Err(Error::Parse(format!(
                        "image {y} of point {x} is outside 0..{degree}"
                    )));
                }
                if hit[y] {
                    return Err(Error::Parse(format!("point {y} is hit twice")));
                }
                hit[y] = true;
            }
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).map(Some).collect(),
        }
    }

    pub fn empty(degree: usize) -> Self {
        Self {
            images: vec![None; degree],
        }
    }

    /// Partial identity on the given points.
    pub fn partial_identity(degree: usize, points: &[usize]) -> Self {
        let mut images = vec![None; degree];
        for &p in points {
            images[p] = Some(p);
        }
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.images.get(x).copied().flatten()
    }

    pub fn is_empty(&self) -> bool {
        self.images.iter().all(Option::is_none)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let images = other
            .images
            .iter()
            .map(|y| y.and_then(|y| self.images[y]))
            .collect();
        Self { images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![None; self.degree()];
        for (x, y) in self.images.iter().enumerate() {
            if let Some(y) = *y {
                images[y] = Some(x);
            }
        }
        Self { images }
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        write!(f, "[")?;
        for (i, y) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match y {
                Some(y) => write!(f, "{y}")?,
                None => write!(f, "-")?,
            }
        }
        write!(f, "]")
    }
}

/// A finite inverse semigroup with zero, stored as a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    n: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    zero: Elem,
    labels: Vec<String>,
    idempotents: Vec<Elem>,
    is_idem: Vec<bool>,
}

impl InverseSemigroup {
    /// Closure of `generators` under composition and inversion.
    pub fn from_generators(generators: &[PartialBijection], cap: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Parse("empty generator list".into()));
        };
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Parse(format!(
                "generator degrees differ: {} vs {}",
                degree,
                g.degree()
            )));
        }

        let mut seeds: Vec<PartialBijection> = Vec::new();
        for g in generators {
            for h in [g.clone(), g.inverse()] {
                if !seeds.contains(&h) {
                    seeds.push(h);
                }
            }
        }

        let mut elements: Vec<PartialBijection> = Vec::new();
        let mut index: HashMap<PartialBijection, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for s in &seeds {
            if !index.contains_key(s) {
                index.insert(s.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(s.clone());
            }
        }
        while let Some(w) = queue.pop_front() {
            for a in &seeds {
                let p = elements[w].compose(a);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }

        let empty = PartialBijection::empty(degree);
        let zero_pos = match index.get(&empty) {
            Some(&z) => z,
            None => {
                // An absorbing element other than the empty map already acts as zero.
                let absorbing = (0..elements.len()).find(|&z| {
                    elements.iter().all(|x| {
                        let l = elements[z].compose(x);
                        let r = x.compose(&elements[z]);
                        l == elements[z] && r == elements[z]
                    })
                });
                match absorbing {
                    Some(z) => z,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        elements.push(empty.clone());
                        elements.len() - 1
                    }
                }
            }
        };

        // zero first, then discovery order
        let mut order = vec![zero_pos];
        order.extend((0..elements.len()).filter(|&i| i != zero_pos));
        let elements: Vec<PartialBijection> = order.into_iter().map(|i| elements[i].clone()).collect();
        Ok(Self::from_maps(&elements, 0))
    }

    /// Builds the table of an already closed family of partial bijections.
    fn from_maps(elements: &[PartialBijection], zero: Elem) -> Self {
        let n = elements.len();
        let index: HashMap<&PartialBijection, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let zero_map = &elements[zero];
        let lookup = |p: &PartialBijection| -> Elem {
            match index.get(p) {
                Some(&i) => i,
                // only reachable when zero is an absorbing non-empty map
                None => {
                    debug_assert!(p.is_empty());
                    index[zero_map]
                }
            }
        };
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = lookup(&elements[a].compose(&elements[b]));
            }
        }
        let inv = elements.iter().map(|e| lookup(&e.inverse())).collect();
        let labels = elements.iter().map(|e| e.to_string()).collect();
        Self::assemble(n, mul, inv, zero, labels)
    }

    /// Validates explicit tables. When `inv` is `None` it is computed.
    /// When `zero` is `None` an absorbing element is searched for and, failing
    /// that, a fresh zero is adjoined as the last index.
    pub fn from_tables(table: Vec<Vec<Elem>>, inv: Option<Vec<Elem>>, zero: Option<Elem>) -> Result<Self> {
        let mut n = table.len();
        if n == 0 {
            return Err(Error::Parse("empty multiplication table".into()));
        }
        if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Parse(format!("row {i} has length {}, expected {n}", row.len())));
        }
        let mut mul: Vec<Elem> = table.into_iter().flatten().collect();
        if let Some(&bad) = mul.iter().find(|&&x| x >= n) {
            return Err(Error::Parse(format!("table entry {bad} out of range")));
        }
        let mut inv = inv;
        if let Some(inv) = &inv {
            if inv.len() != n {
                return Err(Error::Parse(format!("inv has length {}, expected {n}", inv.len())));
            }
            if inv.iter().any(|&x| x >= n) {
                return Err(Error::Parse("inv entry out of range".into()));
            }
        }
        let zero = match zero {
            Some(z) if z >= n => return Err(Error::Parse(format!("zero index {z} out of range"))),
            Some(z) => z,
            None => {
                let absorbing = (0..n).find(|&z| (0..n).all(|x| mul[z * n + x] == z && mul[x * n + z] == z));
                match absorbing {
                    Some(z) => z,
                    None => {
                        let m = n + 1;
                        let mut grown = vec![n; m * m];
                        for a in 0..n {
                            for b in 0..n {
                                grown[a * m + b] = mul[a * n + b];
                            }
                        }
                        mul = grown;
                        if let Some(v) = inv.as_mut() {
                            v.push(n);
                        }
                        n = m;
                        n - 1
                    }
                }
            }
        };
        let at = |a: Elem, b: Elem| mul[a * n + b];
        for x in 0..n {
            if at(zero, x) != zero || at(x, zero) != zero {
                return Err(Error::NotInverse(format!("{zero} is not absorbing at {x}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mut computed = vec![0; n];
        for (s, slot) in computed.iter_mut().enumerate() {
            let candidates: Vec<Elem> = (0..n)
                .filter(|&t| at(at(s, t), s) == s && at(at(t, s), t) == t)
                .collect();
            if candidates.len() != 1 {
                return Err(Error::NotInverse(format!(
                    "element {s} has {} inverses",
                    candidates.len()
                )));
            }
            *slot = candidates[0];
        }
        if let Some(given) = inv {
            if let Some(s) = (0..n).find(|&s| given[s] != computed[s]) {
                return Err(Error::NotInverse(format!(
                    "inv[{s}] = {} but the unique inverse is {}",
                    given[s], computed[s]
                )));
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let s = Self::assemble(n, mul, computed, zero, labels);
        for &e in &s.idempotents {
            for &f in &s.idempotents {
                if s.mul(e, f) != s.mul(f, e) {
                    return Err(Error::NotInverse(format!("idempotents {e} and {f} do not commute")));
                }
            }
        }
        Ok(s)
    }

    /// Assembles tables that are already known to describe an inverse
    /// semigroup, such as a quotient by a congruence.
    pub(crate) fn from_parts(mul: Vec<Elem>, inv: Vec<Elem>, zero: Elem, labels: Vec<String>) -> Self {
        let n = inv.len();
        debug_assert_eq!(mul.len(), n * n);
        Self::assemble(n, mul, inv, zero, labels)
    }

    fn assemble(n: usize, mul: Vec<Elem>, inv: Vec<Elem>, zero: Elem, labels: Vec<String>) -> Self {
        let is_idem: Vec<bool> = (0..n).map(|e| mul[e * n + e] == e).collect();
        let idempotents = (0..n).filter(|&e| is_idem[e]).collect();
        Self {
            n,
            mul,
            inv,
            zero,
            labels,
            idempotents,
            is_idem,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of the element with the given label.
    pub fn find(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn idempotents(&self) -> &[Elem] {
        &self.idempotents
    }

    #[inline]
    pub fn is_idempotent(&self, e: Elem) -> bool {
        self.is_idem[e]
    }

    /// `s*s`
    #[inline]
    pub fn source(&self, s: Elem) -> Elem {
        self.mul(self.inv(s), s)
    }

    /// `ss*`
    #[inline]
    pub fn range(&self, s: Elem) -> Elem {
        self.mul(s, self.inv(s))
    }

    /// `s*es`
    #[inline]
    pub fn conj(&self, s: Elem, e: Elem) -> Elem {
        self.mul(self.mul(self.inv(s), e), s)
    }

    /// Natural partial order: `s ≤ t` iff `s = t·s*s`.
    #[inline]
    pub fn leq(&self, s: Elem, t: Elem) -> bool {
        self.mul(t, self.source(s)) == s
    }

    pub fn natural_order(&self) -> NaturalOrder {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for s in 0..n {
            for t in 0..n {
                leq[s * n + t] = self.leq(s, t);
            }
        }
        NaturalOrder { n, leq }
    }

    pub fn down_set(&self, s: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&t| self.leq(t, s)).collect()
    }

    pub fn up_set(&self, s: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&t| self.leq(s, t)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `SaS`, the principal ideal generated by `a`.
    pub fn principal_ideal(&self, a: Elem) -> Vec<Elem> {
        let mut member = vec![false; self.n];
        for x in 0..self.n {
            let xa = self.mul(x, a);
            for y in 0..self.n {
                member[self.mul(xa, y)] = true;
            }
        }
        (0..self.n).filter(|&x| member[x]).collect()
    }

    /// `SXS` for a set of elements, together with zero.
    pub fn ideal_generated_by(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.n];
        member[self.zero] = true;
        for &a in gens {
            for x in self.principal_ideal(a) {
                member[x] = true;
            }
        }
        (0..self.n).filter(|&x| member[x]).collect()
    }

    /// Two-sided ideal test: nonempty and `SIS ⊆ I`.
    pub fn is_ideal(&self, set: &[Elem]) -> bool {
        if set.is_empty() {
            return false;
        }
        let member = self.membership(set);
        set.iter().all(|&a| {
            (0..self.n).all(|x| member[self.mul(x, a)] && member[self.mul(a, x)])
        })
    }

    pub fn membership(&self, set: &[Elem]) -> Vec<bool> {
        let mut member = vec![false; self.n];
        for &a in set {
            member[a] = true;
        }
        member
    }

    /// The inverse subsemigroup on `set`, with the embedding into `self`.
    /// `set` must contain zero and be closed under products and inverses.
    pub fn subsemigroup(&self, set: &[Elem]) -> Result<(InverseSemigroup, Vec<Elem>)> {
        let mut embed: Vec<Elem> = set.to_vec();
        embed.sort_unstable();
        embed.dedup();
        let member = self.membership(&embed);
        if !member[self.zero] {
            return Err(Error::NotIdeal("subset does not contain zero".into()));
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &a) in embed.iter().enumerate() {
            local[a] = i;
        }
        let m = embed.len();
        let mut mul = vec![0; m * m];
        for (i, &a) in embed.iter().enumerate() {
            for (j, &b) in embed.iter().enumerate() {
                let p = self.mul(a, b);
                if !member[p] {
                    return Err(Error::NotIdeal(format!("subset not closed: {a}*{b} = {p}")));
                }
                mul[i * m + j] = local[p];
            }
        }
        let mut inv = vec![0; m];
        for (i, &a) in embed.iter().enumerate() {
            let ai = self.inv(a);
            if !member[ai] {
                return Err(Error::NotIdeal(format!("subset not closed under inverse at {a}")));
            }
            inv[i] = local[ai];
        }
        let labels = embed.iter().map(|&a| self.labels[a].clone()).collect();
        let sub = Self::assemble(m, mul, inv, local[self.zero], labels);
        Ok((sub, embed))
    }

    /// Full invariant check (used by tests and table input).
    pub fn validate(&self) -> Result<()> {
        let table: Vec<Vec<Elem>> = (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect();
        Self::from_tables(table, Some(self.inv.clone()), Some(self.zero)).map(|_| ())
    }
}

/// The natural partial order as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalOrder {
    n: usize,
    leq: Vec<bool>,
}

impl NaturalOrder {
    pub fn leq(&self, s: Elem, t: Elem) -> bool {
        self.leq[s * self.n + t]
    }

    pub fn down_set(&self, s: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&t| self.leq(t, s)).collect()
    }

    pub fn up_set(&self, s: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&t| self.leq(s, t)).collect()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// JSON input for a semigroup: either generators or explicit tables.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SemigroupInput {
    Generators {
        degree: usize,
        generators: Vec<Vec<Option<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Table {
        table: Vec<Vec<Elem>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inv: Option<Vec<Elem>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        zero: Option<Elem>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

impl SemigroupInput {
    pub fn build(&self, cap: usize) -> Result<InverseSemigroup> {
        match self {
            SemigroupInput::Generators {
                degree,
                generators,
                labels,
            } => {
                if generators.is_empty() {
                    return Err(Error::Parse("empty generator list".into()));
                }
                let gens = generators
                    .iter()
                    .map(|g| {
                        if g.len() != *degree {
                            return Err(Error::Parse(format!(
                                "generator has {} points, degree is {degree}",
                                g.len()
                            )));
                        }
                        PartialBijection::new(g.clone())
                    })
                    .collect::<Result<Vec<_>>>()?;
                let s = InverseSemigroup::from_generators(&gens, cap)?;
                apply_labels(s, labels)
            }
            SemigroupInput::Table {
                table,
                inv,
                zero,
                labels,
            } => {
                if table.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                let s = InverseSemigroup::from_tables(table.clone(), inv.clone(), *zero)?;
                apply_labels(s, labels)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Table form of an existing semigroup.
    pub fn table_of(s: &InverseSemigroup) -> Self {
        SemigroupInput::Table {
            table: (0..s.len()).map(|a| (0..s.len()).map(|b| s.mul(a, b)).collect()).collect(),
            inv: Some((0..s.len()).map(|a| s.inv(a)).collect()),
            zero: Some(s.zero()),
            labels: Some(s.labels().to_vec()),
        }
    }
}

fn apply_labels(s: InverseSemigroup, labels: &Option<Vec<String>>) -> Result<InverseSemigroup> {
    match labels {
        None => Ok(s),
        Some(l) if l.len() == s.len() => Ok(s.with_labels(l.clone())),
        Some(l) => Err(Error::Parse(format!(
            "{} labels for {} elements",
            l.len(),
            s.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn i2_has_seven_elements_and_four_idempotents() {
        let s = fixtures::i2();
        assert_eq!(s.len(), 7);
        s.validate().unwrap();
        let mut idem: Vec<&str> = s.idempotents().iter().map(|&e| s.label(e)).collect();
        idem.sort();
        assert_eq!(idem, vec!["0", "E11", "E22", "I"]);
    }

    #[test]
    fn empty_map_generates_zero_semigroup() {
        let s = InverseSemigroup::from_generators(&[PartialBijection::empty(2)], 100).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.idempotents(), &[0]);
    }

    #[test]
    fn e4_closure() {
        let s = fixtures::e4();
        assert_eq!(s.len(), 4);
        assert_eq!(s.idempotents().len(), 4);
        let f = s.find("f").unwrap();
        let g = s.find("g").unwrap();
        let e = s.find("e").unwrap();
        assert!(s.leq(f, g));
        assert!(!s.leq(e, g));
    }

    #[test]
    fn i2_order_examples() {
        let s = fixtures::i2();
        let [i, x, e11] = ["I", "X", "E11"].map(|l| s.find(l).unwrap());
        assert!(s.leq(e11, i));
        assert!(!s.leq(x, i));
        for a in s.elements() {
            assert!(s.leq(s.zero(), a));
        }
    }

    #[test]
    fn permutation_group_gets_zero_adjoined() {
        let x = PartialBijection::new(vec![Some(1), Some(0)]).unwrap();
        let s = InverseSemigroup::from_generators(&[x], 100).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.label(s.zero()), "0");
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [
            PartialBijection::new(vec![Some(1), Some(2), Some(0)]).unwrap(),
            PartialBijection::new(vec![Some(1), Some(0), Some(2)]).unwrap(),
        ];
        assert_eq!(
            InverseSemigroup::from_generators(&gens, 4),
            Err(Error::CapExceeded { cap: 4 })
        );
    }

    #[test]
    fn table_rejects_non_inverse() {
        // left-zero band {a, b} with zero adjoined: a*b = a, b*a = b
        let table = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 2, 2]];
        assert!(matches!(
            InverseSemigroup::from_tables(table, None, Some(0)),
            Err(Error::NotInverse(_))
        ));
    }

    #[test]
    fn table_rejects_non_associative() {
        let table = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 1]];
        assert!(matches!(
            InverseSemigroup::from_tables(table, None, Some(0)),
            Err(Error::NotAssociative { .. }) | Err(Error::NotInverse(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let s = fixtures::i2();
        let input = SemigroupInput::table_of(&s);
        let text = serde_json::to_string(&input).unwrap();
        let back = SemigroupInput::from_json(&text).unwrap().build(100).unwrap();
        assert_eq!(back, s);
        let gens = r#"{"degree": 2, "generators": [[0, 1], [1, 0], [0, null]]}"#;
        assert_eq!(SemigroupInput::from_json(gens).unwrap().build(100).unwrap().len(), 7);
        let empty = r#"{"degree": 2, "generators": []}"#;
        assert!(matches!(
            SemigroupInput::from_json(empty).unwrap().build(100),
            Err(Error::Parse(_))
        ));
    }
}
