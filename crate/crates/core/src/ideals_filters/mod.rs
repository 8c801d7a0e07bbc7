//! Ideals of `S`, order ideals of `E(S)`, saturation, and the filter space
//! with its hull/kernel maps and the `β` action.

mod filters;
mod ideals;

pub use filters::{
    hull, hull_tight, kernel, Filter, FilterSpace, InvariantSubsets, DEFAULT_INVARIANT_SUBSET_ORBITS,
};
pub use ideals::{
    arrow_to_set, enumerate_ideals, ideal_lattice, ideal_to_order_ideal, invariant_order_ideals,
    is_invariant_order_ideal, is_saturated_ideal_s_level, is_saturated_order_ideal, order_ideal_to_ideal,
    order_ideals, saturate, saturated_ideal_generated_by, IdealLattice, IdealOfS, MAX_IDEALS,
};
