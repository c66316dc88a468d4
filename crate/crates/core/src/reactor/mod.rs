//! The chemical universe and the epoch loop that drives it.

mod config;
mod molecule;
pub mod reactions;
mod universe;

pub use config::ReactorConfig;
pub use molecule::{GroupId, Molecule};
pub use reactions::{
    collision_swap, cycle_crossover, react_cross, react_same, react_wall, wall_direction, wall_swap,
    Direction,
};
pub use universe::{
    init_universe, EpochStats, GroupOutcome, GroupSpec, MolRef, ProblemGroup, ReactionCounts,
    RunReport, Universe,
};
