use thiserror::Error;

use crate::semigroup::Elem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Parse(String),

    #[error("not an inverse semigroup: {0}")]
    NotInverse(String),

    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },

    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("instance too large for {what}: {size} > {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("partition is not a congruence: ({a},{b}) related but {detail}")]
    NotCongruence { a: Elem, b: Elem, detail: String },

    #[error("not an ideal: {0}")]
    NotIdeal(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("beta_s is undefined: s*s = {domain} is not in the filter with minimum {filter_min}")]
    DomainViolation { domain: Elem, filter_min: Elem },

    #[error("unit set is not invariant: {0}")]
    NotInvariant(String),

    #[error("edge {edge} has an endpoint outside the vertex set")]
    DanglingEndpoint { edge: String },

    #[error("vertex set is not hereditary: edge {edge} enters it from outside")]
    NotHereditary { edge: String },

    #[error("product leaves the truncation depth {depth}")]
    Overflow { depth: usize },

    #[error("axiom {axiom} violated at {witness}")]
    AxiomViolation { axiom: &'static str, witness: String },

    #[error("internal contract broken: {0}")]
    InternalContract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
