//! Artificial chemical reactor (ACR).
//!
//! A population-based stochastic optimizer that treats candidate solutions as
//! molecules in a shared, well-stirred vessel. Molecules are permutations of
//! "atoms" (cities, aircraft or radiation-hybrid markers) and their mass is the
//! objective value of the problem they encode, so lighter molecules are better.
//! Several unrelated problems can be solved in the same universe at once:
//! molecules of the same problem recombine by cycle crossover, molecules of
//! different problems bump into each other and each undergoes a local swap.
//!
//! The crate is organised as:
//!
//! - [`problems`]: instance types and mass functions for the three families.
//! - [`reactor`]: molecules, reaction rules, selection, decay, saturation and
//!   the epoch loop.
//! - [`io`]: instance parsers/writers, the run configuration file and reports.
//! - [`oracle`]: exhaustive and constructive reference solvers for small cases.
//! - [`harness`]: repeated seeded runs with mean / standard deviation.
//! - [`generate`]: seeded synthetic instance generators.
//! - [`cli`]: the `acr` command line front end.

pub mod cli;
pub mod error;
pub mod generate;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod perm;
pub mod problems;
pub mod reactor;

pub use error::{Error, Result};
pub use problems::{AlspInstance, Instance, LandingSchedule, ProblemKind, RhPanel, TspInstance};
pub use reactor::{GroupId, GroupSpec, Molecule, ReactorConfig, RunReport, Universe};
