//! The three problem families and their mass (objective) functions.
//!
//! Every mass function is a pure function of a permutation. The reactor calls
//! [`Instance::mass`] on its hot path; the free functions ([`tsp_cost`],
//! [`alsp_decode`], [`rh_breaks`], ...) validate their input first.

pub mod alsp;
pub mod rh;
pub mod tsp;

use std::fmt;

pub use alsp::{alsp_cost, alsp_decode, Aircraft, AlspInstance, LandingSchedule, BIG_M};
pub use rh::{rh_breaks, rh_mass, Retention, RhPanel};
pub use tsp::{tsp_cost, TspInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Tsp,
    Alsp,
    Rh,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Tsp => "tsp",
            ProblemKind::Alsp => "alsp",
            ProblemKind::Rh => "rh",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "tsp" => Some(ProblemKind::Tsp),
            "alsp" => Some(ProblemKind::Alsp),
            "rh" => Some(ProblemKind::Rh),
            _ => None,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A problem instance of any of the three kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Tsp(TspInstance),
    Alsp(AlspInstance),
    Rh(RhPanel),
}

impl Instance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::Tsp(_) => ProblemKind::Tsp,
            Instance::Alsp(_) => ProblemKind::Alsp,
            Instance::Rh(_) => ProblemKind::Rh,
        }
    }

    /// Number of atoms in a molecule of this instance.
    pub fn size(&self) -> usize {
        match self {
            Instance::Tsp(t) => t.n(),
            Instance::Alsp(a) => a.len(),
            Instance::Rh(r) => r.markers(),
        }
    }

    /// Mass of a permutation. `perm` must be valid for this instance.
    pub fn mass(&self, perm: &[usize]) -> f64 {
        debug_assert!(crate::perm::is_permutation(perm, self.size()));
        match self {
            Instance::Tsp(t) => t.tour_cost(perm),
            Instance::Alsp(a) => a.order_cost(perm),
            Instance::Rh(r) => r.total_breaks(perm) as f64,
        }
    }

    /// True when every rotation of a permutation has the same mass.
    pub fn rotation_invariant(&self) -> bool {
        matches!(self, Instance::Tsp(_))
    }

    /// Divisor turning a mass into the unit shown in reports: the coordinate
    /// scale for tours, 1 for penalty cost, the marker count for breaks (so
    /// RH reports show breaks per marker).
    pub fn display_divisor(&self) -> f64 {
        match self {
            Instance::Tsp(t) => t.display_scale(),
            Instance::Alsp(_) => 1.0,
            Instance::Rh(r) => r.markers() as f64,
        }
    }
}
