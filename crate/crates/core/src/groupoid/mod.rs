//! Germ groupoids of finite inverse semigroups.
//!
//! For a finite semigroup every filter is `m↑` and the germ `[s, m↑]` is
//! determined by the product `s·m`, which we call its key. The key has source
//! `m`, so arrows over a unit `m↑` correspond to the elements with source `m`.

mod theorems;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals_filters::FilterSpace;
use crate::relations::UnionFind;
use crate::semigroup::{Elem, InverseSemigroup};

pub use theorems::{
    condition_k, double_arrow_isomorphism, ideal_reduction, quotient_reduction, verify_structure_theorems, weakly_fixed_criterion, ConditionKReport, StructureReport,
    TheoremCheck, WeaklyFixedReport,
};

/// Orbit count up to which strong effectiveness enumerates every invariant
/// unit set; beyond it each orbit is checked on its own.
pub const STRONG_EFFECTIVENESS_ORBITS: usize = 12;

/// The germ `[rep, min↑]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Germ {
    /// Least element index representing the germ.
    pub rep: Elem,
    /// `rep · min`, which determines the germ.
    pub key: Elem,
    /// Index of the source unit.
    pub source: usize,
    /// Index of the range unit, the unit of `β_rep(min↑)`.
    pub range: usize,
}

#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    semigroup: Arc<InverseSemigroup>,
    /// Least elements of the unit filters.
    units: Vec<Elem>,
    unit_of_min: HashMap<Elem, usize>,
    arrows: Vec<Germ>,
    lookup: HashMap<(usize, Elem), usize>,
}

impl FiniteGroupoid {
    /// Germ groupoid over the filters whose least elements are `unit_mins`.
    /// The set must be invariant under `β`.
    fn over_units(s: Arc<InverseSemigroup>, unit_mins: Vec<Elem>) -> Result<Self> {
        let unit_of_min: HashMap<Elem, usize> = unit_mins.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut arrows = Vec::new();
        let mut lookup = HashMap::new();
        for (u, &m) in unit_mins.iter().enumerate() {
            for a in s.elements() {
                if s.mul(m, s.source(a)) != m {
                    continue;
                }
                let key = s.mul(a, m);
                if lookup.contains_key(&(u, key)) {
                    continue;
                }
                let image = s.range(key);
                let Some(&range) = unit_of_min.get(&image) else {
                    return Err(Error::NotInvariant(format!(
                        "β_{} sends {}↑ outside the unit set",
                        s.label(a),
                        s.label(m)
                    )));
                };
                // elements are scanned in index order, so the first hit is least
                lookup.insert((u, key), arrows.len());
                arrows.push(Germ {
                    rep: a,
                    key,
                    source: u,
                    range,
                });
            }
        }
        Ok(Self {
            semigroup: s,
            units: unit_mins,
            unit_of_min,
            arrows,
            lookup,
        })
    }

    /// The universal groupoid over all filters.
    pub fn universal(s: Arc<InverseSemigroup>) -> Result<Self> {
        let space = FilterSpace::new(&s)?;
        let mins = space.filters().iter().map(|f| f.min).collect();
        Self::over_units(s, mins)
    }

    /// The tight groupoid over tight filters.
    pub fn tight(s: Arc<InverseSemigroup>) -> Result<Self> {
        let space = FilterSpace::new(&s)?;
        let mins = space.filters().iter().filter(|f| f.tight).map(|f| f.min).collect();
        Self::over_units(s, mins)
    }

    pub fn semigroup(&self) -> &InverseSemigroup {
        &self.semigroup
    }

    pub fn semigroup_arc(&self) -> Arc<InverseSemigroup> {
        Arc::clone(&self.semigroup)
    }

    /// Least elements of the unit filters.
    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    pub fn unit_of_min(&self, m: Elem) -> Option<usize> {
        self.unit_of_min.get(&m).copied()
    }

    pub fn arrows(&self) -> &[Germ] {
        &self.arrows
    }

    pub fn num_units(&self) -> usize {
        self.units.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn range(&self, a: usize) -> usize {
        self.arrows[a].range
    }

    /// The arrow `[s, F]` for the unit `F`, if `s*s ∈ F`.
    pub fn germ(&self, s: Elem, unit: usize) -> Option<usize> {
        let m = *self.units.get(unit)?;
        let sg = &self.semigroup;
        if sg.mul(m, sg.source(s)) != m {
            return None;
        }
        self.lookup.get(&(unit, sg.mul(s, m))).copied()
    }

    /// The identity arrow `[m, m↑]` at a unit.
    pub fn unit_arrow(&self, unit: usize) -> usize {
        self.germ(self.units[unit], unit).expect("every unit has an identity germ")
    }

    pub fn is_unit_arrow(&self, a: usize) -> bool {
        let g = self.arrows[a];
        g.key == self.units[g.source]
    }

    /// `[t, β_s F][s, F] = [ts, F]`, defined when `d(second) = r(first)`.
    pub fn compose(&self, second: usize, first: usize) -> Option<usize> {
        let (t, s) = (self.arrows[second], self.arrows[first]);
        if t.source != s.range {
            return None;
        }
        let sg = &self.semigroup;
        let key = sg.mul(t.rep, s.key);
        let found = self.lookup.get(&(s.source, key)).copied();
        debug_assert!(found.is_some(), "composite germ missing");
        found
    }

    /// `[s, F]⁻¹ = [s*, β_s F]`
    pub fn inverse(&self, a: usize) -> usize {
        let g = self.arrows[a];
        let key = self.semigroup.inv(g.key);
        self.lookup[&(g.range, key)]
    }

    /// Arrows from `u` to `u`.
    pub fn isotropy(&self, unit: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == unit && self.arrows[a].range == unit)
            .collect()
    }

    /// Connected components of the unit space, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.units.len());
        for g in &self.arrows {
            uf.union(g.source, g.range);
        }
        uf.partition().classes()
    }

    pub fn is_invariant(&self, units: &[usize]) -> bool {
        let mut member = vec![false; self.units.len()];
        for &u in units {
            member[u] = true;
        }
        self.arrows.iter().all(|g| member[g.source] == member[g.range])
    }

    /// `G|_A`, for an invariant set `A` of unit indices.
    pub fn reduction(&self, units: &[usize]) -> Result<FiniteGroupoid> {
        if let Some(&bad) = units.iter().find(|&&u| u >= self.units.len()) {
            return Err(Error::NotInvariant(format!("unit {bad} does not exist")));
        }
        if !self.is_invariant(units) {
            return Err(Error::NotInvariant(format!("{units:?} is not a union of orbits")));
        }
        let mut sorted = units.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mins = sorted.iter().map(|&u| self.units[u]).collect();
        Self::over_units(Arc::clone(&self.semigroup), mins)
    }

    /// An isotropy arrow that is not a unit, if any.
    pub fn nontrivial_isotropy(&self) -> Option<usize> {
        (0..self.arrows.len()).find(|&a| {
            let g = self.arrows[a];
            g.source == g.range && !self.is_unit_arrow(a)
        })
    }

    /// Effective and strongly effective. The topology is discrete, so the
    /// interior of the isotropy is the isotropy itself and closed invariant
    /// sets are the unions of orbits.
    pub fn effectiveness(&self) -> Result<Effectiveness> {
        let witness = self.nontrivial_isotropy();
        let orbits = self.orbits();
        let mut failing = None;
        if orbits.len() <= STRONG_EFFECTIVENESS_ORBITS {
            for mask in 0u64..(1u64 << orbits.len()) {
                let set: Vec<usize> = orbits
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .flat_map(|(_, o)| o.iter().copied())
                    .collect();
                if self.reduction(&set)?.nontrivial_isotropy().is_some() {
                    failing = Some(set);
                    break;
                }
            }
        } else {
            for o in &orbits {
                if self.reduction(o)?.nontrivial_isotropy().is_some() {
                    failing = Some(o.clone());
                    break;
                }
            }
        }
        Ok(Effectiveness {
            effective: witness.is_none(),
            strongly_effective: failing.is_none(),
            nontrivial_isotropy: witness.map(|a| self.describe(a)),
            failing_unit_set: failing,
        })
    }

    pub fn describe(&self, a: usize) -> String {
        let g = self.arrows[a];
        let s = &self.semigroup;
        format!("[{}, {}↑]", s.label(g.rep), s.label(self.units[g.source]))
    }

    /// Category axioms and canonical form, checked exhaustively.
    pub fn check_axioms(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InternalContract(m));
        let s = &self.semigroup;
        for (a, g) in self.arrows.iter().enumerate() {
            let m = self.units[g.source];
            if s.source(g.key) != m {
                return fail(format!("key of {} has the wrong source", self.describe(a)));
            }
            let least = s
                .elements()
                .find(|&t| s.mul(m, s.source(t)) == m && s.mul(t, m) == g.key);
            if least != Some(g.rep) {
                return fail(format!("{} is not in canonical form", self.describe(a)));
            }
            if self.germ(g.rep, g.source) != Some(a) {
                return fail(format!("re-canonicalizing {} moves it", self.describe(a)));
            }
            let inv = self.inverse(a);
            if self.arrows[inv].source != g.range || self.arrows[inv].range != g.source {
                return fail(format!("inverse of {} has wrong ends", self.describe(a)));
            }
            if self.compose(inv, a) != Some(self.unit_arrow(g.source))
                || self.compose(a, inv) != Some(self.unit_arrow(g.range))
            {
                return fail(format!("inverse law fails at {}", self.describe(a)));
            }
            if self.compose(a, self.unit_arrow(g.source)) != Some(a)
                || self.compose(self.unit_arrow(g.range), a) != Some(a)
            {
                return fail(format!("unit law fails at {}", self.describe(a)));
            }
        }
        let by_source = self.arrows_by_source();
        for a in 0..self.arrows.len() {
            for &b in &by_source[self.range(a)] {
                let ba = self.compose(b, a).expect("composable");
                if self.source(ba) != self.source(a) || self.range(ba) != self.range(b) {
                    return fail(format!("composite of {} and {} has wrong ends", self.describe(b), self.describe(a)));
                }
                for &c in &by_source[self.range(b)] {
                    let left = self.compose(c, ba);
                    let right = self.compose(c, b).and_then(|cb| self.compose(cb, a));
                    if left != right {
                        return fail(format!("associativity fails at {}", self.describe(a)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn arrows_by_source(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.units.len()];
        for (a, g) in self.arrows.iter().enumerate() {
            out[g.source].push(a);
        }
        out
    }

    pub fn summary(&self) -> GroupoidSummary {
        let isotropy_sizes = (0..self.units.len()).map(|u| self.isotropy(u).len()).collect();
        GroupoidSummary {
            units: self.units.len(),
            arrows: self.arrows.len(),
            orbits: self.orbits().len(),
            isotropy_sizes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Effectiveness {
    pub effective: bool,
    pub strongly_effective: bool,
    pub nontrivial_isotropy: Option<String>,
    pub failing_unit_set: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupoidSummary {
    pub units: usize,
    pub arrows: usize,
    pub orbits: usize,
    pub isotropy_sizes: Vec<usize>,
}

/// Universal and tight groupoids of one semigroup.
#[derive(Debug, Clone)]
pub struct Groupoids {
    pub universal: FiniteGroupoid,
    pub tight: FiniteGroupoid,
}

pub fn build_groupoids(s: &InverseSemigroup) -> Result<Groupoids> {
    let s = Arc::new(s.clone());
    Ok(Groupoids {
        universal: FiniteGroupoid::universal(Arc::clone(&s))?,
        tight: FiniteGroupoid::tight(s)?,
    })
}

/// Checks that the given unit and arrow maps form an isomorphism `g → h`:
/// bijective, compatible with source, range, inverse and composition.
pub fn check_isomorphism(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    unit_map: &[usize],
    arrow_map: &[usize],
) -> std::result::Result<(), String> {
    if g.num_units() != h.num_units() {
        return Err(format!("unit counts differ: {} vs {}", g.num_units(), h.num_units()));
    }
    if g.num_arrows() != h.num_arrows() {
        return Err(format!("arrow counts differ: {} vs {}", g.num_arrows(), h.num_arrows()));
    }
    let mut hit = vec![false; h.num_units()];
    for &u in unit_map {
        if std::mem::replace(&mut hit[u], true) {
            return Err(format!("unit map is not injective at image {u}"));
        }
    }
    let mut hit = vec![false; h.num_arrows()];
    for (a, &b) in arrow_map.iter().enumerate() {
        if std::mem::replace(&mut hit[b], true) {
            return Err(format!("arrow map is not injective at {}", g.describe(a)));
        }
        if h.source(b) != unit_map[g.source(a)] || h.range(b) != unit_map[g.range(a)] {
            return Err(format!("{} is sent to an arrow with the wrong ends", g.describe(a)));
        }
        if arrow_map[g.inverse(a)] != h.inverse(b) {
            return Err(format!("inverse of {} is not preserved", g.describe(a)));
        }
    }
    let by_source = g.arrows_by_source();
    for a in 0..g.num_arrows() {
        for &b in &by_source[g.range(a)] {
            let ba = g.compose(b, a).expect("composable");
            if h.compose(arrow_map[b], arrow_map[a]) != Some(arrow_map[ba]) {
                return Err(format!(
                    "composite of {} after {} is not preserved",
                    g.describe(b),
                    g.describe(a)
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tight(s: InverseSemigroup) -> FiniteGroupoid {
        FiniteGroupoid::tight(Arc::new(s)).unwrap()
    }

    #[test]
    fn i2_tight_groupoid_is_the_pair_groupoid() {
        let s = fixtures::i2();
        let [x, e21, e11] = ["X", "E21", "E11"].map(|l| s.find(l).unwrap());
        let g = tight(s);
        assert_eq!(g.num_units(), 2);
        assert_eq!(g.num_arrows(), 4);
        g.check_axioms().unwrap();
        let u = g.unit_of_min(e11).unwrap();
        assert_eq!(g.germ(x, u), g.germ(e21, u));
        assert_eq!(g.arrows()[g.germ(x, u).unwrap()].rep, e21.min(x));
        let e = g.effectiveness().unwrap();
        assert!(e.effective && e.strongly_effective);
    }

    #[test]
    fn universal_arrows_are_nonzero_elements() {
        for s in [fixtures::i2(), fixtures::e4(), fixtures::z2_with_zero(), fixtures::symmetric_inverse_monoid(3)] {
            let n = s.len();
            let g = FiniteGroupoid::universal(Arc::new(s)).unwrap();
            assert_eq!(g.num_arrows(), n - 1);
            g.check_axioms().unwrap();
        }
    }

    #[test]
    fn semilattice_groupoid_is_its_unit_space() {
        let g = tight(fixtures::e4());
        assert_eq!(g.num_arrows(), g.num_units());
        let e = g.effectiveness().unwrap();
        assert!(e.effective && e.strongly_effective);
    }

    #[test]
    fn z2_with_zero_has_isotropy() {
        let g = tight(fixtures::z2_with_zero());
        assert_eq!(g.num_units(), 1);
        assert_eq!(g.isotropy(0).len(), 2);
        let e = g.effectiveness().unwrap();
        assert!(!e.effective && !e.strongly_effective);
        assert!(e.nontrivial_isotropy.is_some());
    }

    #[test]
    fn germ_equality_matches_the_literal_definition() {
        let s = fixtures::symmetric_inverse_monoid(3);
        let g = FiniteGroupoid::universal(Arc::new(s.clone())).unwrap();
        for (u, &m) in g.units().iter().enumerate() {
            let up: Vec<Elem> = s.idempotents().iter().copied().filter(|&e| s.mul(m, e) == m).collect();
            let valid: Vec<Elem> = s.elements().filter(|&a| s.mul(m, s.source(a)) == m).collect();
            for &a in &valid {
                for &b in &valid {
                    let literal = up.iter().any(|&e| s.mul(a, e) == s.mul(b, e));
                    assert_eq!(literal, g.germ(a, u) == g.germ(b, u));
                }
            }
        }
    }

    #[test]
    fn reductions() {
        let g = tight(fixtures::i2());
        let all: Vec<usize> = (0..g.num_units()).collect();
        assert_eq!(g.reduction(&all).unwrap().num_arrows(), g.num_arrows());
        assert_eq!(g.reduction(&[]).unwrap().num_arrows(), 0);
        assert!(matches!(g.reduction(&[0]), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn identity_maps_are_isomorphisms() {
        let g = tight(fixtures::i2());
        let units: Vec<usize> = (0..g.num_units()).collect();
        let arrows: Vec<usize> = (0..g.num_arrows()).collect();
        assert_eq!(check_isomorphism(&g, &g, &units, &arrows), Ok(()));
        let mut swapped = arrows.clone();
        swapped.swap(0, 1);
        assert!(check_isomorphism(&g, &g, &units, &swapped).is_err());
    }
}
