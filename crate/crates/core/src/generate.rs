//! Seeded synthetic instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problems::rh::Retention;
use crate::problems::{Aircraft, AlspInstance, RhPanel, TspInstance};

/// Coordinate scale of generated tours; reports divide lengths by it.
pub const TSP_SCALE: f64 = 1000.0;

/// `n` uniform points in the unit square, stored scaled by [`TSP_SCALE`].
pub fn tsp_random(n: usize, seed: u64) -> Result<TspInstance> {
    if n < 2 {
        return Err(Error::Validation(format!("tsp-random needs at least 2 cities, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n)
        .map(|_| {
            let x: f64 = rng.random();
            let y: f64 = rng.random();
            ((x * TSP_SCALE).round(), (y * TSP_SCALE).round())
        })
        .collect();
    Ok(TspInstance::euclidean(coords)?
        .with_name(format!("rand{n}"))
        .with_comment(format!("tsp-random n={n} seed={seed} scale={TSP_SCALE}")))
}

/// Panel of `markers` markers typed on `hybrids` cell lines with a known
/// best order.
///
/// Markers are generated along the order `0..markers`; each step flips one
/// hybrid, and every step uses a different hybrid. Before noise the planted
/// order has exactly `markers - 1` breaks, which is the fewest any order
/// can have because neighbouring markers in any order differ somewhere.
/// `noise` is the chance of flipping each cell afterwards.
pub fn rh_planted(markers: usize, hybrids: usize, noise: f64, seed: u64) -> Result<RhPanel> {
    if markers < 2 {
        return Err(Error::Validation(format!("rh-planted needs at least 2 markers, got {markers}")));
    }
    if hybrids + 1 < markers {
        return Err(Error::Validation(format!(
            "rh-planted needs at least {} hybrids for {markers} markers, got {hybrids}",
            markers - 1
        )));
    }
    if !(0.0..=1.0).contains(&noise) {
        return Err(Error::Validation(format!("noise must be in [0, 1], got {noise}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current: Vec<bool> = (0..hybrids).map(|_| rng.random()).collect();
    let mut flips: Vec<usize> = (0..hybrids).collect();
    flips.shuffle(&mut rng);
    let mut rows = Vec::with_capacity(markers);
    rows.push(current.clone());
    for &h in flips.iter().take(markers - 1) {
        current[h] = !current[h];
        rows.push(current.clone());
    }
    let cells = rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|bit| {
                    let bit = if noise > 0.0 && rng.random::<f64>() < noise { !bit } else { bit };
                    if bit { Retention::Present } else { Retention::Absent }
                })
                .collect()
        })
        .collect();
    let names = (0..markers).map(|i| format!("m{i}")).collect();
    RhPanel::new(names, cells)
}

/// Random landing problem with integer windows `e <= t <= l`.
pub fn alsp_random(aircraft: usize, seed: u64) -> Result<AlspInstance> {
    if aircraft == 0 {
        return Err(Error::Validation("alsp-random needs at least one aircraft".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let horizon = 20 * aircraft as i64;
    let planes = (0..aircraft)
        .map(|_| {
            let target = 100 + rng.random_range(0..=horizon);
            let earliest = target - rng.random_range(10..=60);
            Aircraft {
                appearance: (earliest - rng.random_range(10..=60)) as f64,
                earliest: earliest as f64,
                target: target as f64,
                latest: (target + rng.random_range(100..=400)) as f64,
                early_penalty: rng.random_range(1..=30) as f64,
                late_penalty: rng.random_range(1..=30) as f64,
            }
        })
        .collect();
    let separation = (0..aircraft)
        .map(|i| {
            (0..aircraft)
                .map(|j| if i == j { 0.0 } else { rng.random_range(3..=15) as f64 })
                .collect()
        })
        .collect();
    Ok(AlspInstance::new(planes, separation, 1)?.with_freeze_time(10.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsp_is_seeded() {
        let a = tsp_random(20, 7).unwrap();
        assert_eq!(a, tsp_random(20, 7).unwrap());
        assert_ne!(a, tsp_random(20, 8).unwrap());
        assert_eq!(a.display_scale(), TSP_SCALE);
        assert!(a.coords().unwrap().iter().all(|&(x, y)| (0.0..=TSP_SCALE).contains(&x) && (0.0..=TSP_SCALE).contains(&y)));
    }

    #[test]
    fn planted_order_has_minimal_breaks() {
        let p = rh_planted(8, 10, 0.0, 3).unwrap();
        let id: Vec<usize> = (0..8).collect();
        assert_eq!(p.total_breaks(&id), 7);
        assert!(rh_planted(8, 6, 0.0, 3).is_err());
        assert!(rh_planted(8, 10, 1.5, 3).is_err());
    }

    #[test]
    fn alsp_windows_are_ordered() {
        let a = alsp_random(12, 5).unwrap();
        for p in a.aircraft() {
            assert!(p.earliest <= p.target && p.target <= p.latest);
        }
        assert_eq!(a, alsp_random(12, 5).unwrap());
    }
}
