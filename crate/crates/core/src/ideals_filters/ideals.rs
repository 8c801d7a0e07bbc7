use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, InverseSemigroup};
use crate::semilattice::Semilattice;

/// Guard on the number of ideals or order ideals enumerated.
pub const MAX_IDEALS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IdealOfS {
    /// Sorted members; always contains zero.
    pub members: Vec<Elem>,
    pub saturated: bool,
    pub zero_only: bool,
}

/// Closes a family of sorted sets under pairwise union, starting from `base`.
fn union_closure(base: Vec<Elem>, generators: &[Vec<Elem>], what: &'static str) -> Result<Vec<Vec<Elem>>> {
    let mut all: BTreeSet<Vec<Elem>> = BTreeSet::new();
    all.insert(base.clone());
    let mut frontier = vec![base];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let mut u: Vec<Elem> = x.iter().chain(g.iter()).copied().collect();
            u.sort_unstable();
            u.dedup();
            if !all.contains(&u) {
                if all.len() >= MAX_IDEALS {
                    return Err(Error::TooLarge {
                        what,
                        size: all.len() + 1,
                        bound: MAX_IDEALS,
                    });
                }
                all.insert(u.clone());
                frontier.push(u);
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// All ideals of `S`, as unions of principal ideals together with `{0}`.
pub fn enumerate_ideals(s: &InverseSemigroup) -> Result<Vec<IdealOfS>> {
    let principal: BTreeSet<Vec<Elem>> = s.elements().map(|a| s.principal_ideal(a)).collect();
    let principal: Vec<Vec<Elem>> = principal.into_iter().collect();
    let sets = union_closure(vec![s.zero()], &principal, "ideal enumeration")?;
    Ok(sets
        .into_iter()
        .map(|members| IdealOfS {
            saturated: is_saturated_order_ideal(s, &ideal_to_order_ideal(s, &members)),
            zero_only: members.len() == 1,
            members,
        })
        .collect())
}

/// All order ideals of `E(S)` containing zero.
pub fn order_ideals(s: &InverseSemigroup) -> Result<Vec<Vec<Elem>>> {
    let e = Semilattice::of(s);
    let principal: Vec<Vec<Elem>> = e
        .carrier()
        .iter()
        .map(|&x| {
            let mut d = e.down(x);
            d.sort_unstable();
            d
        })
        .collect();
    union_closure(vec![s.zero()], &principal, "order ideal enumeration")
}

/// `ss* ∈ X` implies `s*s ∈ X`.
pub fn is_invariant_order_ideal(s: &InverseSemigroup, x: &[Elem]) -> bool {
    let member = s.membership(x);
    s.elements().all(|a| !member[s.range(a)] || member[s.source(a)])
}

pub fn invariant_order_ideals(s: &InverseSemigroup) -> Result<Vec<Vec<Elem>>> {
    Ok(order_ideals(s)?
        .into_iter()
        .filter(|x| is_invariant_order_ideal(s, x))
        .collect())
}

/// `X ↦ SXS`
pub fn order_ideal_to_ideal(s: &InverseSemigroup, x: &[Elem]) -> Vec<Elem> {
    s.ideal_generated_by(x)
}

/// `I ↦ I ∩ E`
pub fn ideal_to_order_ideal(s: &InverseSemigroup, ideal: &[Elem]) -> Vec<Elem> {
    ideal.iter().copied().filter(|&a| s.is_idempotent(a)).collect()
}

/// No `e ∉ X` satisfies `e → X`.
pub fn is_saturated_order_ideal(s: &InverseSemigroup, x: &[Elem]) -> bool {
    let e = Semilattice::of(s);
    let member = s.membership(x);
    e.carrier().iter().all(|&f| member[f] || !e.covers(f, x))
}

/// Least saturated order ideal containing `X`.
pub fn saturate(s: &InverseSemigroup, x: &[Elem]) -> Vec<Elem> {
    let e = Semilattice::of(s);
    let mut member = s.membership(x);
    member[s.zero()] = true;
    loop {
        let current: Vec<Elem> = s.elements().filter(|&a| member[a]).collect();
        let added: Vec<Elem> = e
            .carrier()
            .iter()
            .copied()
            .filter(|&f| !member[f] && e.covers(f, &current))
            .collect();
        if added.is_empty() {
            return current;
        }
        for f in added {
            member[f] = true;
        }
    }
}

/// `s → I` at the level of `S`: every `0 < x ≤ s` has `x↓ ∩ b↓ ≠ {0}` for some `b ∈ I`.
pub fn arrow_to_set(s: &InverseSemigroup, a: Elem, set: &[Elem]) -> bool {
    let z = s.zero();
    let below = |x: Elem| s.down_set(x).into_iter().filter(move |&y| y != z);
    below(a).all(|x| {
        let xd: Vec<Elem> = below(x).collect();
        set.iter().any(|&b| xd.iter().any(|&y| s.leq(y, b)))
    })
}

/// The saturation test phrased with arbitrary elements: no `s ∉ I` has `s → I`.
pub fn is_saturated_ideal_s_level(s: &InverseSemigroup, ideal: &[Elem]) -> bool {
    let member = s.membership(ideal);
    s.elements().all(|a| member[a] || !arrow_to_set(s, a, ideal))
}

/// The saturated ideal generated by a set: `SXS`, then saturate `I ∩ E`, then
/// take the ideal again. The composite must be idempotent.
pub fn saturated_ideal_generated_by(s: &InverseSemigroup, gens: &[Elem]) -> Result<Vec<Elem>> {
    let step = |g: &[Elem]| {
        let i = order_ideal_to_ideal(s, g);
        let x = saturate(s, &ideal_to_order_ideal(s, &i));
        order_ideal_to_ideal(s, &x)
    };
    let once = step(gens);
    let twice = step(&once);
    if once != twice {
        return Err(Error::InternalContract(format!(
            "saturated ideal generation is not idempotent: {once:?} then {twice:?}"
        )));
    }
    if !is_saturated_order_ideal(s, &ideal_to_order_ideal(s, &once)) {
        return Err(Error::InternalContract("generated ideal is not saturated".into()));
    }
    Ok(once)
}

/// Ideals of `S` matched with invariant order ideals of `E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealLattice {
    pub ideals: Vec<IdealOfS>,
    /// `invariant_order_ideals[i] = ideals[i] ∩ E`
    pub invariant_order_ideals: Vec<Vec<Elem>>,
}

impl IdealLattice {
    pub fn saturated(&self) -> impl Iterator<Item = &IdealOfS> {
        self.ideals.iter().filter(|i| i.saturated)
    }
}

/// Enumerates ideals and invariant order ideals independently and checks that
/// `X ↦ SXS` and `I ↦ I ∩ E` are mutually inverse bijections between them.
pub fn ideal_lattice(s: &InverseSemigroup) -> Result<IdealLattice> {
    let ideals = enumerate_ideals(s)?;
    let invariant: BTreeSet<Vec<Elem>> = invariant_order_ideals(s)?.into_iter().collect();
    if invariant.len() != ideals.len() {
        return Err(Error::InternalContract(format!(
            "{} ideals but {} invariant order ideals",
            ideals.len(),
            invariant.len()
        )));
    }
    let mut matched = Vec::with_capacity(ideals.len());
    for ideal in &ideals {
        let x = ideal_to_order_ideal(s, &ideal.members);
        if !invariant.contains(&x) {
            return Err(Error::InternalContract(format!("I ∩ E = {x:?} is not an invariant order ideal")));
        }
        if order_ideal_to_ideal(s, &x) != ideal.members {
            return Err(Error::InternalContract(format!("S(I ∩ E)S differs from I for I = {:?}", ideal.members)));
        }
        if is_saturated_ideal_s_level(s, &ideal.members) != ideal.saturated {
            return Err(Error::InternalContract(format!(
                "saturation tests disagree on {:?}",
                ideal.members
            )));
        }
        matched.push(x);
    }
    for x in &invariant {
        let back = ideal_to_order_ideal(s, &order_ideal_to_ideal(s, x));
        if &back != x {
            return Err(Error::InternalContract(format!("SXS ∩ E differs from X = {x:?}")));
        }
    }
    Ok(IdealLattice {
        ideals,
        invariant_order_ideals: matched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids(s: &InverseSemigroup, labels: &[&str]) -> Vec<Elem> {
        let mut v: Vec<Elem> = labels.iter().map(|l| s.find(l).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn i2_ideals() {
        let s = fixtures::i2();
        let lat = ideal_lattice(&s).unwrap();
        let got: Vec<(Vec<Elem>, bool)> = lat.ideals.iter().map(|i| (i.members.clone(), i.saturated)).collect();
        let all: Vec<Elem> = s.elements().collect();
        let mut want = vec![
            (vec![s.zero()], true),
            (ids(&s, &["0", "E11", "E12", "E21", "E22"]), false),
            (all, true),
        ];
        want.sort();
        let mut got = got;
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn zero_semigroup_has_one_ideal() {
        let lat = ideal_lattice(&fixtures::zero_semigroup()).unwrap();
        assert_eq!(lat.ideals.len(), 1);
        assert!(lat.ideals[0].zero_only);
    }

    #[test]
    fn e4_ideals_are_its_order_ideals() {
        let s = fixtures::e4();
        let lat = ideal_lattice(&s).unwrap();
        let mut got: Vec<Vec<Elem>> = lat.ideals.iter().map(|i| i.members.clone()).collect();
        got.sort();
        let mut want: Vec<Vec<Elem>> = [
            vec!["0"],
            vec!["0", "e"],
            vec!["0", "f"],
            vec!["0", "e", "f"],
            vec!["0", "f", "g"],
            vec!["0", "e", "f", "g"],
        ]
        .iter()
        .map(|l| ids(&s, l))
        .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn saturation_examples() {
        let s = fixtures::i2();
        let x = ids(&s, &["0", "E11", "E22"]);
        assert_eq!(saturate(&s, &x), ids(&s, &["0", "E11", "E22", "I"]));
        assert_eq!(saturate(&s, &[s.zero()]), vec![s.zero()]);
        let s = fixtures::e4();
        assert_eq!(saturate(&s, &ids(&s, &["0", "e", "f"])), ids(&s, &["0", "e", "f", "g"]));
    }

    #[test]
    fn saturated_generation_is_idempotent() {
        let s = fixtures::i2();
        let e11 = s.find("E11").unwrap();
        let all: Vec<Elem> = s.elements().collect();
        assert_eq!(saturated_ideal_generated_by(&s, &[e11]).unwrap(), all);
        assert_eq!(saturated_ideal_generated_by(&s, &[]).unwrap(), vec![s.zero()]);
    }
}
