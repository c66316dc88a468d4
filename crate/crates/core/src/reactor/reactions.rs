//! The three reaction rules.
//!
//! * Same-problem collision: cycle crossover at a start position. The cycle is
//!   traced by looking up, in the first parent, the atom that the second parent
//!   holds at the current position, until it returns to the start. Child one
//!   keeps the first parent's atoms on the cycle and the second parent's atoms
//!   elsewhere; child two is the mirror image.
//! * Cross-problem collision: each reactant swaps the atom at its collision
//!   point with the next one, wrapping from the last position to the first.
//! * Wall collision: swap with the neighbour in a coin-chosen direction,
//!   wrapping at both ends.

use crate::error::{Error, Result};
use crate::problems::Instance;

use super::molecule::Molecule;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Maps a uniform draw in `[0, 1)` to a wall direction: forward iff `u > 0.5`.
pub fn wall_direction(u: f64) -> Direction {
    if u > 0.5 {
        Direction::Forward
    } else {
        Direction::Backward
    }
}

/// Cycle crossover of two permutations of equal length starting at `start`.
pub fn cycle_crossover(p1: &[usize], p2: &[usize], start: usize) -> (Vec<usize>, Vec<usize>) {
    let n = p1.len();
    debug_assert_eq!(n, p2.len());
    let mut pos_in_p1 = vec![0; n];
    for (i, &a) in p1.iter().enumerate() {
        pos_in_p1[a] = i;
    }
    let mut on_cycle = vec![false; n];
    let mut cur = start;
    loop {
        on_cycle[cur] = true;
        cur = pos_in_p1[p2[cur]];
        if cur == start {
            break;
        }
    }
    let mut c1 = p2.to_vec();
    let mut c2 = p1.to_vec();
    for i in (0..n).filter(|&i| on_cycle[i]) {
        c1[i] = p1[i];
        c2[i] = p2[i];
    }
    (c1, c2)
}

/// Swap position `l` with its successor, the last position with the first.
pub fn collision_swap(perm: &[usize], l: usize) -> Vec<usize> {
    let mut out = perm.to_vec();
    let n = out.len();
    out.swap(l, (l + 1) % n);
    out
}

/// Swap position `l` with its neighbour in `dir`, wrapping at both ends.
pub fn wall_swap(perm: &[usize], l: usize, dir: Direction) -> Vec<usize> {
    let mut out = perm.to_vec();
    let n = out.len();
    let other = match dir {
        Direction::Forward => (l + 1) % n,
        Direction::Backward => (l + n - 1) % n,
    };
    out.swap(l, other);
    out
}

fn check_position(m: &Molecule, l: usize) -> Result<()> {
    if l < m.len() {
        Ok(())
    } else {
        Err(Error::contract(format!(
            "collision point {l} outside molecule of length {}",
            m.len()
        )))
    }
}

/// Same-problem reaction: two parents produce two cycle-crossover children.
pub fn react_same(m1: &Molecule, m2: &Molecule, l: usize, instance: &Instance) -> Result<(Molecule, Molecule)> {
    if m1.group != m2.group {
        return Err(Error::contract(format!(
            "same-problem reaction between groups {} and {}",
            m1.group, m2.group
        )));
    }
    if m1.len() != instance.size() || m2.len() != instance.size() {
        return Err(Error::contract("molecule length does not match its instance"));
    }
    check_position(m1, l)?;
    let (c1, c2) = cycle_crossover(&m1.perm, &m2.perm, l);
    Ok((
        Molecule::new(m1.group, c1, instance),
        Molecule::new(m1.group, c2, instance),
    ))
}

/// Cross-problem reaction: each reactant undergoes one collision swap.
pub fn react_cross(
    m5: (&Molecule, &Instance),
    m6: (&Molecule, &Instance),
    l5: usize,
    l6: usize,
) -> Result<(Molecule, Molecule)> {
    let ((a, ia), (b, ib)) = (m5, m6);
    if a.group == b.group {
        return Err(Error::contract(format!(
            "cross-problem reaction inside group {}",
            a.group
        )));
    }
    check_position(a, l5)?;
    check_position(b, l6)?;
    Ok((
        Molecule::new(a.group, collision_swap(&a.perm, l5), ia),
        Molecule::new(b.group, collision_swap(&b.perm, l6), ib),
    ))
}

/// Wall reaction: a single molecule swaps one atom with a neighbour.
pub fn react_wall(m9: &Molecule, l: usize, dir: Direction, instance: &Instance) -> Result<Molecule> {
    check_position(m9, l)?;
    Ok(Molecule::new(m9.group, wall_swap(&m9.perm, l, dir), instance))
}
