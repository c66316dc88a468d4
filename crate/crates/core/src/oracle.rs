//! Reference solvers for small instances.
//!
//! These are deliberately naive: exhaustive enumeration in lexicographic
//! order and a nearest-neighbour tour. They share only the mass functions
//! with the reactor.

use crate::error::{Error, Result};
use crate::perm::next_permutation;
use crate::problems::{AlspInstance, Instance, TspInstance};

/// Largest atom count [`brute_force_min`] accepts.
pub const MAX_BRUTE_FORCE: usize = 10;
pub const MAX_ALSP_AIRCRAFT: usize = 8;
pub const MAX_ALSP_RUNWAYS: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_mass: f64,
    pub best_perm: Vec<usize>,
    /// Runway per aircraft for landing-schedule results; `best_mass` is the
    /// cost of `best_perm` decoded with this assignment.
    pub runway_of: Option<Vec<usize>>,
    pub enumerated: u64,
}

/// Exhaustive minimum of `mass` over all permutations of `0..n`.
///
/// With `rotation_invariant` the first atom is pinned to 0, which only
/// skips rotations of permutations already seen. Ties keep the
/// lexicographically smallest permutation.
pub fn brute_force_min<F>(mass: F, n: usize, rotation_invariant: bool) -> Result<OracleResult>
where
    F: Fn(&[usize]) -> f64,
{
    if n == 0 || n > MAX_BRUTE_FORCE {
        return Err(Error::OracleRefused(format!(
            "exhaustive search supports 1..={MAX_BRUTE_FORCE} atoms, got {n}"
        )));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let tail_from = usize::from(rotation_invariant);
    let mut best = OracleResult {
        best_mass: mass(&perm),
        best_perm: perm.clone(),
        runway_of: None,
        enumerated: 1,
    };
    while next_permutation(&mut perm[tail_from..]) {
        best.enumerated += 1;
        let m = mass(&perm);
        if m < best.best_mass {
            best.best_mass = m;
            best.best_perm.copy_from_slice(&perm);
        }
    }
    Ok(best)
}

/// Nearest-neighbour tour from `start`; ties go to the lowest city index.
pub fn nn_tour(instance: &TspInstance, start: usize) -> Result<Vec<usize>> {
    let n = instance.n();
    if start >= n {
        return Err(Error::contract(format!("start city {start} out of range 0..{n}")));
    }
    let mut visited = vec![false; n];
    let mut tour = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    tour.push(cur);
    for _ in 1..n {
        let next = (0..n)
            .filter(|&j| !visited[j])
            .min_by(|&a, &b| instance.cost(cur, a).total_cmp(&instance.cost(cur, b)))
            .expect("unvisited city remains");
        visited[next] = true;
        tour.push(next);
        cur = next;
    }
    Ok(tour)
}

/// Best landing order and runway assignment within the decoder's schedule
/// family, by enumerating every order and every assignment.
pub fn alsp_exact_small(instance: &AlspInstance) -> Result<OracleResult> {
    let n = instance.len();
    let runways = instance.runways();
    if n > MAX_ALSP_AIRCRAFT || runways > MAX_ALSP_RUNWAYS {
        return Err(Error::OracleRefused(format!(
            "landing oracle supports at most {MAX_ALSP_AIRCRAFT} aircraft on {MAX_ALSP_RUNWAYS} runways, got {n} on {runways}"
        )));
    }
    let assignments = runways.pow(n as u32);
    let mut order: Vec<usize> = (0..n).collect();
    let mut assign = vec![0; n];
    let mut best: Option<OracleResult> = None;
    let mut enumerated = 0;
    loop {
        for code in 0..assignments {
            let mut c = code;
            for a in assign.iter_mut() {
                *a = c % runways;
                c /= runways;
            }
            // runways are interchangeable: the first aircraft to land uses runway 0
            if assign[order[0]] != 0 {
                continue;
            }
            enumerated += 1;
            let schedule = instance.decode_assigned(&order, &assign)?;
            let cost = crate::problems::alsp_cost(instance, &schedule)?;
            if best.as_ref().is_none_or(|b| cost < b.best_mass) {
                best = Some(OracleResult {
                    best_mass: cost,
                    best_perm: order.clone(),
                    runway_of: Some(assign.clone()),
                    enumerated: 0,
                });
            }
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    let mut best = best.expect("at least one order is enumerated");
    best.enumerated = enumerated;
    Ok(best)
}

/// The matching oracle for any instance within its size guard.
pub fn solve_exact(instance: &Instance) -> Result<OracleResult> {
    match instance {
        Instance::Alsp(a) => alsp_exact_small(a),
        other => brute_force_min(|p| other.mass(p), other.size(), other.rotation_invariant()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{tsp_cost, Aircraft};

    #[test]
    fn uniform_triangle() {
        let t = TspInstance::from_matrix(vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]).unwrap();
        let r = brute_force_min(|p| t.tour_cost(p), 3, true).unwrap();
        assert_eq!(r.best_mass, 3.0);
        assert_eq!(r.best_perm, vec![0, 1, 2]);
        assert_eq!(r.enumerated, 2);
        let full = brute_force_min(|p| t.tour_cost(p), 3, false).unwrap();
        assert_eq!(full.enumerated, 6);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(brute_force_min(|_| 0.0, 11, false), Err(Error::OracleRefused(_))));
        assert!(matches!(brute_force_min(|_| 0.0, 0, false), Err(Error::OracleRefused(_))));
    }

    #[test]
    fn lexicographic_tie_break() {
        let r = brute_force_min(|_| 1.0, 4, false).unwrap();
        assert_eq!(r.best_perm, vec![0, 1, 2, 3]);
        assert_eq!(r.enumerated, 24);
    }

    #[test]
    fn nearest_neighbour() {
        let t = TspInstance::from_matrix(vec![vec![0.0, 1.0, 1.0, 1.0]; 4].into_iter().enumerate().map(|(i, mut r)| { r[i] = 0.0; r }).collect()).unwrap();
        assert_eq!(nn_tour(&t, 2).unwrap(), vec![2, 0, 1, 3]);
        let line = TspInstance::euclidean(vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]).unwrap();
        assert_eq!(nn_tour(&line, 0).unwrap(), vec![0, 1, 2]);
        assert!(nn_tour(&line, 3).is_err());
        assert!(tsp_cost(&line, &nn_tour(&line, 1).unwrap()).is_ok());
    }

    fn plane(t: f64, l: f64) -> Aircraft {
        Aircraft { appearance: 0.0, earliest: 0.0, target: t, latest: l, early_penalty: 1.0, late_penalty: 3.0 }
    }

    #[test]
    fn single_aircraft_oracle() {
        let inst = AlspInstance::new(vec![plane(5.0, 10.0)], vec![vec![0.0]], 1).unwrap();
        let r = alsp_exact_small(&inst).unwrap();
        assert_eq!(r.best_mass, 0.0);
        let s = inst.decode_assigned(&r.best_perm, r.runway_of.as_ref().unwrap()).unwrap();
        assert_eq!(s.times, vec![5.0]);
    }

    #[test]
    fn alsp_guard() {
        let a = plane(5.0, 10.0);
        let inst = AlspInstance::new(vec![a; 9], vec![vec![1.0; 9]; 9], 1).unwrap();
        assert!(matches!(alsp_exact_small(&inst), Err(Error::OracleRefused(_))));
        let inst = AlspInstance::new(vec![a; 2], vec![vec![1.0; 2]; 2], 3).unwrap();
        assert!(matches!(alsp_exact_small(&inst), Err(Error::OracleRefused(_))));
    }
}
