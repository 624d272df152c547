//! The inhomogeneous bar complex of the model group.

mod chain;
mod cochain;
mod constructions;

pub use chain::BarChain;
pub use cochain::{
    aw_cup, check_crossed, pair_cocycle, pair_cocycle_disc, BarCochain, Coefficient, CupProduct,
};
pub use constructions::{
    cross_product, express_as_boundary, express_as_boundary_randomized, lift_twisted_cycle,
    lift_twisted_cycle_randomized, mapping_class_primitive, shuffle_cycle, LiftedCycle,
    TwistedTerm,
};

#[cfg(test)]
mod tests;
