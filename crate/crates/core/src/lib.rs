//! Finite inverse semigroups, their congruences and ideals, filter spaces,
//! germ groupoids, graph inverse semigroups and self-similar graph actions.
//!
//! Everything runs on finite data. Infinite graph semigroups are handled by
//! truncating path length and refusing any product that leaves the window.

pub mod congruences;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod graphs;
pub mod groupoid;
pub mod ideals_filters;
pub mod relations;
pub mod report;
pub mod selfsimilar;
pub mod semigroup;
pub mod semilattice;
pub mod verify;

pub use congruences::{Congruence, Quotient};
pub use error::{Error, Result};
pub use graphs::{DirectedGraph, GraphPath, TruncatedGraphSemigroup};
pub use groupoid::FiniteGroupoid;
pub use ideals_filters::{Filter, FilterSpace, IdealOfS};
pub use relations::{Homomorphism, Partition};
pub use selfsimilar::SelfSimilarAction;
pub use semigroup::{Elem, InverseSemigroup, NaturalOrder, PartialBijection};
pub use semilattice::Semilattice;

/// A yes/no answer that carries a witness when it is "no".
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn yes() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    pub fn no(witness: W) -> Self {
        Self {
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn from_failure(failure: Option<W>) -> Self {
        match failure {
            None => Self::yes(),
            Some(w) => Self::no(w),
        }
    }
}
