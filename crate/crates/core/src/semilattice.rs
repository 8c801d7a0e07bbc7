//! The idempotent semilattice `E(S)`: covers, orthogonality, 0-disjunctivity
//! and the trapping condition.

use crate::semigroup::{Elem, InverseSemigroup};
use crate::Verdict;

/// Beyond this many candidates the trapping witness is the whole candidate set
/// rather than a smallest one.
const SMALLEST_WITNESS_LIMIT: usize = 16;

/// `E(S)` viewed through the parent semigroup; elements keep their indices in `S`.
#[derive(Debug, Clone, Copy)]
pub struct Semilattice<'a> {
    s: &'a InverseSemigroup,
}

impl<'a> Semilattice<'a> {
    pub fn of(s: &'a InverseSemigroup) -> Self {
        Self { s }
    }

    pub fn semigroup(&self) -> &'a InverseSemigroup {
        self.s
    }

    pub fn carrier(&self) -> &'a [Elem] {
        self.s.idempotents()
    }

    pub fn len(&self) -> usize {
        self.carrier().len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier().is_empty()
    }

    pub fn zero(&self) -> Elem {
        self.s.zero()
    }

    pub fn meet(&self, e: Elem, f: Elem) -> Elem {
        self.s.mul(e, f)
    }

    pub fn leq(&self, e: Elem, f: Elem) -> bool {
        self.s.mul(e, f) == e
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + 'a {
        let z = self.s.zero();
        self.s.idempotents().iter().copied().filter(move |&e| e != z)
    }

    /// `e↓` within `E`.
    pub fn down(&self, e: Elem) -> Vec<Elem> {
        self.carrier().iter().copied().filter(|&x| self.leq(x, e)).collect()
    }

    /// `e↑` within `E`.
    pub fn up(&self, e: Elem) -> Vec<Elem> {
        self.carrier().iter().copied().filter(|&x| self.leq(e, x)).collect()
    }

    /// `f⊥ = {e : ef = 0}`
    pub fn orthogonal(&self, f: Elem) -> Vec<Elem> {
        let z = self.zero();
        self.carrier().iter().copied().filter(|&e| self.meet(e, f) == z).collect()
    }

    pub fn atoms(&self) -> Vec<Elem> {
        let z = self.zero();
        self.nonzero()
            .filter(|&a| self.nonzero().all(|x| x == a || !self.leq(x, a)))
            .filter(|&a| a != z)
            .collect()
    }

    pub fn is_atom(&self, a: Elem) -> bool {
        a != self.zero() && self.nonzero().all(|x| x == a || !self.leq(x, a))
    }

    /// `e → C`: every nonzero `x ≤ e` meets some member of `C`. The witness is
    /// an `x` orthogonal to all of `C`.
    pub fn is_cover(&self, e: Elem, cover: &[Elem]) -> Verdict<Elem> {
        let z = self.zero();
        let failure = self
            .nonzero()
            .filter(|&x| self.leq(x, e))
            .find(|&x| cover.iter().all(|&c| self.meet(x, c) == z));
        Verdict::from_failure(failure)
    }

    pub fn covers(&self, e: Elem, cover: &[Elem]) -> bool {
        self.is_cover(e, cover).holds
    }

    /// For all `0 < e < f` some `0 < e' < f` is orthogonal to `e`. The witness
    /// is the failing pair `(e, f)`.
    pub fn is_0_disjunctive(&self) -> Verdict<(Elem, Elem)> {
        let z = self.zero();
        for f in self.nonzero() {
            for e in self.nonzero().filter(|&e| e != f && self.leq(e, f)) {
                let found = self
                    .nonzero()
                    .any(|d| d != f && self.leq(d, f) && self.meet(d, e) == z);
                if !found {
                    return Verdict::no((e, f));
                }
            }
        }
        Verdict::yes()
    }

    /// A cover `{e_1, …, e_m, f}` of `e↓` with `e_i ∈ e↓ ∩ f⊥`, given as the
    /// list of `e_i`. Prefers a smallest one when the candidate set is small.
    pub fn trapping_witness(&self, f: Elem, e: Elem) -> Option<Vec<Elem>> {
        let z = self.zero();
        let candidates: Vec<Elem> = self
            .nonzero()
            .filter(|&x| self.leq(x, e) && self.meet(x, f) == z)
            .collect();
        let mut full = candidates.clone();
        full.push(f);
        if !self.covers(e, &full) {
            return None;
        }
        if candidates.len() > SMALLEST_WITNESS_LIMIT {
            return Some(candidates);
        }
        for size in 0..=candidates.len() {
            if let Some(found) = first_subset_of_size(&candidates, size, &mut |subset| {
                let mut c = subset.to_vec();
                c.push(f);
                self.covers(e, &c)
            }) {
                return Some(found);
            }
        }
        unreachable!("the full candidate set already covers")
    }

    /// For all nonzero `f < e` a trapping witness exists. The witness is the
    /// failing pair `(f, e)`.
    pub fn has_trapping_condition(&self) -> Verdict<(Elem, Elem)> {
        for e in self.nonzero() {
            for f in self.nonzero().filter(|&f| f != e && self.leq(f, e)) {
                if self.trapping_witness(f, e).is_none() {
                    return Verdict::no((f, e));
                }
            }
        }
        Verdict::yes()
    }
}

/// Lexicographically first subset of the given size satisfying `accept`.
fn first_subset_of_size(
    items: &[Elem],
    size: usize,
    accept: &mut dyn FnMut(&[Elem]) -> bool,
) -> Option<Vec<Elem>> {
    fn go(
        items: &[Elem],
        start: usize,
        size: usize,
        chosen: &mut Vec<Elem>,
        accept: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        if chosen.len() == size {
            return accept(chosen);
        }
        for i in start..items.len() {
            if items.len() - i < size - chosen.len() {
                break;
            }
            chosen.push(items[i]);
            if go(items, i + 1, size, chosen, accept) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    go(items, 0, size, &mut chosen, accept).then_some(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn named<const N: usize>(s: &InverseSemigroup, labels: [&str; N]) -> [Elem; N] {
        labels.map(|l| s.find(l).unwrap())
    }

    #[test]
    fn e4_covers() {
        let s = fixtures::e4();
        let e4 = Semilattice::of(&s);
        let [e, f, g] = named(&s, ["e", "f", "g"]);
        assert!(e4.covers(g, &[f]));
        assert!(e4.covers(e, &[e]));
        assert!(!e4.covers(g, &[e]));
        assert_eq!(e4.is_cover(g, &[e]).witness, Some(f));
    }

    #[test]
    fn i2_identity_is_covered_by_the_atoms() {
        let s = fixtures::i2();
        let e = Semilattice::of(&s);
        let [i, e11, e22] = named(&s, ["I", "E11", "E22"]);
        assert!(e.covers(i, &[e11, e22]));
        assert!(!e.covers(i, &[e11]));
    }

    #[test]
    fn zero_disjunctive_examples() {
        let s = fixtures::e4();
        let [f, g] = named(&s, ["f", "g"]);
        assert_eq!(Semilattice::of(&s).is_0_disjunctive(), Verdict::no((f, g)));
        assert!(Semilattice::of(&fixtures::i2()).is_0_disjunctive().holds);
        assert!(Semilattice::of(&fixtures::two_element()).is_0_disjunctive().holds);
        assert!(!Semilattice::of(&fixtures::chain3()).is_0_disjunctive().holds);
    }

    #[test]
    fn trapping_examples() {
        for s in [fixtures::e4(), fixtures::i2(), fixtures::chain3()] {
            assert!(Semilattice::of(&s).has_trapping_condition().holds);
        }
        let s = fixtures::e4();
        let [f, g] = named(&s, ["f", "g"]);
        assert_eq!(Semilattice::of(&s).trapping_witness(f, g), Some(vec![]));
        let s = fixtures::i2();
        let [i, e11, e22] = named(&s, ["I", "E11", "E22"]);
        assert_eq!(Semilattice::of(&s).trapping_witness(e11, i), Some(vec![e22]));
    }

    #[test]
    fn atoms_and_orthogonals() {
        let s = fixtures::e4();
        let l = Semilattice::of(&s);
        let [z, e, f, g] = named(&s, ["0", "e", "f", "g"]);
        let mut atoms = l.atoms();
        atoms.sort();
        let mut want = vec![e, f];
        want.sort();
        assert_eq!(atoms, want);
        let mut perp = l.orthogonal(e);
        perp.sort();
        let mut want = vec![z, f, g];
        want.sort();
        assert_eq!(perp, want);

        let s = fixtures::i2();
        let l = Semilattice::of(&s);
        let [z, e11, e22] = named(&s, ["0", "E11", "E22"]);
        let mut perp = l.orthogonal(e11);
        perp.sort();
        let mut want = vec![z, e22];
        want.sort();
        assert_eq!(perp, want);
        assert!(Semilattice::of(&fixtures::zero_semigroup()).atoms().is_empty());
    }
}
