use serde::Serialize;

use crate::error::{Error, Result};
use crate::relations::UnionFind;
use crate::semigroup::{Elem, InverseSemigroup};
use crate::semilattice::Semilattice;

/// Orbit count up to which all unions of orbits are listed.
pub const DEFAULT_INVARIANT_SUBSET_ORBITS: usize = 12;

/// A filter of `E` avoiding 0. In a finite semilattice every such filter is
/// `m↑` for its least element `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Filter {
    pub min: Elem,
    pub members: Vec<Elem>,
    pub ultra: bool,
    pub tight: bool,
}

/// All filters of `E(S)` not containing 0, in order of their least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterSpace {
    filters: Vec<Filter>,
    #[serde(skip)]
    by_min: Vec<Option<usize>>,
}

impl FilterSpace {
    /// Enumerates and classifies filters. Ultrafilters come from the maximality
    /// test and tight filters from covers; both must coincide with the filters
    /// of atoms.
    pub fn new(s: &InverseSemigroup) -> Result<Self> {
        let e = Semilattice::of(s);
        let z = s.zero();
        let mut filters = Vec::new();
        let mut by_min = vec![None; s.len()];
        for m in e.nonzero() {
            let members = e.up(m);
            let member = s.membership(&members);
            // maximality: anything meeting every member already belongs
            let ultra = e
                .carrier()
                .iter()
                .all(|&x| member[x] || members.iter().any(|&f| e.meet(x, f) == z));
            let outside: Vec<Elem> = e.carrier().iter().copied().filter(|&x| !member[x]).collect();
            let tight = members.iter().all(|&f| !e.covers(f, &outside));
            let atom = e.is_atom(m);
            if ultra != atom || tight != atom {
                return Err(Error::InternalContract(format!(
                    "filter {}↑: ultra={ultra}, tight={tight}, atom={atom}",
                    s.label(m)
                )));
            }
            by_min[m] = Some(filters.len());
            filters.push(Filter {
                min: m,
                members,
                ultra,
                tight,
            });
        }
        Ok(Self { filters, by_min })
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn get(&self, f: usize) -> &Filter {
        &self.filters[f]
    }

    /// Index of the filter `m↑`.
    pub fn index_of_min(&self, m: Elem) -> Option<usize> {
        self.by_min.get(m).copied().flatten()
    }

    pub fn tight(&self) -> Vec<usize> {
        (0..self.len()).filter(|&f| self.filters[f].tight).collect()
    }

    pub fn contains(&self, s: &InverseSemigroup, f: usize, e: Elem) -> bool {
        s.is_idempotent(e) && s.mul(self.filters[f].min, e) == self.filters[f].min
    }

    /// `N(e; e_1, …, e_n)`: filters containing `e` and none of the `e_i`.
    pub fn basic_set(&self, s: &InverseSemigroup, e: Elem, excluded: &[Elem]) -> Vec<usize> {
        (0..self.len())
            .filter(|&f| self.contains(s, f, e) && excluded.iter().all(|&x| !self.contains(s, f, x)))
            .collect()
    }

    /// `D(e; e_1, …, e_n)`, the tight part of the basic set.
    pub fn tight_basic_set(&self, s: &InverseSemigroup, e: Elem, excluded: &[Elem]) -> Vec<usize> {
        self.basic_set(s, e, excluded)
            .into_iter()
            .filter(|&f| self.filters[f].tight)
            .collect()
    }

    /// `β_a(F) = (aFa*)↑`, defined when `a*a ∈ F`.
    pub fn beta(&self, s: &InverseSemigroup, a: Elem, f: usize) -> Result<usize> {
        let m = self.filters[f].min;
        let domain = s.source(a);
        if s.mul(m, domain) != m {
            return Err(Error::DomainViolation { domain, filter_min: m });
        }
        let image = s.mul(s.mul(a, m), s.inv(a));
        self.index_of_min(image)
            .ok_or_else(|| Error::InternalContract(format!("β image {image} is not a nonzero idempotent")))
    }

    /// Closed under every defined `β_a`.
    pub fn is_invariant(&self, s: &InverseSemigroup, set: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &f in set {
            member[f] = true;
        }
        set.iter()
            .all(|&f| s.elements().all(|a| self.beta(s, a, f).map_or(true, |g| member[g])))
    }

    /// Orbits of the `β` action, each sorted, ordered by least member.
    pub fn orbits(&self, s: &InverseSemigroup) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.len());
        for f in 0..self.len() {
            for a in s.elements() {
                if let Ok(g) = self.beta(s, a, f) {
                    uf.union(f, g);
                }
            }
        }
        uf.partition().classes()
    }

    /// Invariant subsets of the filter space (or of its tight part), which in
    /// the finite discrete case are exactly the unions of orbits.
    pub fn invariant_subsets(&self, s: &InverseSemigroup, tight_only: bool, max_orbits: usize) -> Result<InvariantSubsets> {
        let orbits: Vec<Vec<usize>> = self
            .orbits(s)
            .into_iter()
            .filter(|o| !tight_only || self.filters[o[0]].tight)
            .collect();
        if orbits.len() > max_orbits {
            return Err(Error::TooLarge {
                what: "invariant subset enumeration",
                size: orbits.len(),
                bound: max_orbits,
            });
        }
        let mut subsets = Vec::with_capacity(1 << orbits.len());
        for mask in 0u64..(1u64 << orbits.len()) {
            let mut set: Vec<usize> = orbits
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, o)| o.iter().copied())
                .collect();
            set.sort_unstable();
            subsets.push(set);
        }
        subsets.sort();
        Ok(InvariantSubsets { orbits, subsets })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantSubsets {
    pub orbits: Vec<Vec<usize>>,
    pub subsets: Vec<Vec<usize>>,
}

/// `h(X)`: filters disjoint from `X`.
pub fn hull(space: &FilterSpace, s: &InverseSemigroup, x: &[Elem]) -> Vec<usize> {
    (0..space.len())
        .filter(|&f| x.iter().all(|&e| !space.contains(s, f, e)))
        .collect()
}

/// `h(X)` restricted to tight filters.
pub fn hull_tight(space: &FilterSpace, s: &InverseSemigroup, x: &[Elem]) -> Vec<usize> {
    hull(space, s, x)
        .into_iter()
        .filter(|&f| space.get(f).tight)
        .collect()
}

/// `k(A)`: idempotents in no filter of `A`.
pub fn kernel(space: &FilterSpace, s: &InverseSemigroup, set: &[usize]) -> Vec<Elem> {
    let mut k: Vec<Elem> = s
        .idempotents()
        .iter()
        .copied()
        .filter(|&e| set.iter().all(|&f| !space.contains(s, f, e)))
        .collect();
    k.sort_unstable();
    k
}
