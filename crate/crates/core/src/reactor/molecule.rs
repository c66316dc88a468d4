use std::fmt;

use crate::problems::Instance;

/// Index of a problem group inside a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupId(pub usize);

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A candidate solution: a permutation of atoms with its cached mass.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    pub group: GroupId,
    pub perm: Vec<usize>,
    pub mass: f64,
    /// Insertion stamp assigned by the universe; larger is younger.
    pub birth: u64,
}

impl Molecule {
    /// Builds a molecule and evaluates its mass. `perm` must be valid.
    pub fn new(group: GroupId, perm: Vec<usize>, instance: &Instance) -> Self {
        let mass = instance.mass(&perm);
        Molecule {
            group,
            perm,
            mass,
            birth: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }
}
