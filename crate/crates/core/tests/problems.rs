mod common;

use acr::generate::{rh_planted, tsp_random};
use acr::oracle::{alsp_exact_small, brute_force_min, nn_tour, solve_exact};
use acr::problems::{alsp_cost, alsp_decode, rh_breaks, tsp_cost, Aircraft, Instance, LandingSchedule, BIG_M};
use acr::{AlspInstance, Error, GroupSpec, ReactorConfig, TspInstance, Universe};
use common::held_karp;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(n: usize, seed: u64) -> TspInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { rng.random_range(1..100) as f64 }).collect())
        .collect();
    TspInstance::from_matrix(rows).unwrap()
}

#[test]
fn brute_force_agrees_with_held_karp() {
    for seed in 0..6 {
        let euclid = tsp_random(8, seed).unwrap();
        let skew = random_matrix(8, seed);
        for t in [euclid, skew] {
            let bf = brute_force_min(|p| t.tour_cost(p), t.n(), true).unwrap();
            assert!((bf.best_mass - held_karp(&t)).abs() < 1e-9);
            assert_eq!(tsp_cost(&t, &bf.best_perm).unwrap(), bf.best_mass);
            assert_eq!(bf.best_perm[0], 0);
        }
    }
}

#[test]
fn pinning_the_first_city_loses_nothing() {
    for seed in 0..3 {
        let t = random_matrix(7, seed);
        let pinned = brute_force_min(|p| t.tour_cost(p), 7, true).unwrap();
        let full = brute_force_min(|p| t.tour_cost(p), 7, false).unwrap();
        assert_eq!(pinned.best_mass, full.best_mass);
        assert_eq!(pinned.enumerated * 7, full.enumerated);
    }
}

#[test]
fn nearest_neighbour_never_beats_the_optimum() {
    for n in 2..=9 {
        for seed in 0..3 {
            let t = tsp_random(n, seed * 31 + n as u64).unwrap();
            let best = brute_force_min(|p| t.tour_cost(p), n, true).unwrap().best_mass;
            for start in 0..n {
                let tour = nn_tour(&t, start).unwrap();
                assert!(tsp_cost(&t, &tour).unwrap() >= best - 1e-9);
            }
        }
    }
}

#[test]
fn nearest_neighbour_on_flat_costs_walks_in_index_order() {
    let t = match common::uniform_tsp(5) {
        Instance::Tsp(t) => t,
        _ => unreachable!(),
    };
    assert_eq!(nn_tour(&t, 3).unwrap(), vec![3, 0, 1, 2, 4]);
}

#[test]
fn oracle_on_two_markers() {
    let p = rh_planted(2, 3, 0.0, 1).unwrap();
    let r = brute_force_min(|perm| p.total_breaks(perm) as f64, 2, false).unwrap();
    assert_eq!(r.best_mass, 1.0);
    assert_eq!(r.enumerated, 2);
    assert_eq!(p.total_breaks(&[0, 1]), p.total_breaks(&[1, 0]));
}

#[test]
fn planted_panels_have_no_order_below_m_minus_one() {
    for m in 2..=8 {
        for seed in 0..3 {
            let p = rh_planted(m, m + 3, 0.0, seed).unwrap();
            let ident: Vec<usize> = (0..m).collect();
            assert_eq!(rh_breaks(&p, &ident).unwrap(), (m - 1) as u64);
            let r = brute_force_min(|perm| p.total_breaks(perm) as f64, m, false).unwrap();
            assert_eq!(r.best_mass, (m - 1) as f64);
        }
    }
    let six = rh_planted(6, 10, 0.0, 0).unwrap();
    assert_eq!(six.total_breaks(&[0, 1, 2, 3, 4, 5]), 5);
}

#[test]
fn exact_oracle_refuses_twelve_cities() {
    let t = Instance::Tsp(tsp_random(12, 1).unwrap());
    assert!(matches!(solve_exact(&t), Err(Error::OracleRefused(_))));
}

// ---- landing schedules ----------------------------------------------------

fn plane(e: f64, t: f64, l: f64, g: f64, h: f64) -> Aircraft {
    Aircraft { appearance: 0.0, earliest: e, target: t, latest: l, early_penalty: g, late_penalty: h }
}

#[test]
fn two_aircraft_oracle_takes_the_cheaper_order() {
    let a = plane(10.0, 10.0, 50.0, 1.0, 1.0);
    let b = plane(10.0, 10.0, 50.0, 3.0, 3.0);
    let inst = AlspInstance::new(vec![a, b], vec![vec![0.0, 4.0], vec![4.0, 0.0]], 1).unwrap();
    // (a, b): b waits 4 at rate 3; (b, a): a waits 4 at rate 1
    assert_eq!(inst.order_cost(&[0, 1]), 12.0);
    assert_eq!(inst.order_cost(&[1, 0]), 4.0);
    let r = alsp_exact_small(&inst).unwrap();
    assert_eq!(r.best_mass, 4.0);
    assert_eq!(r.best_perm, vec![1, 0]);
}

#[test]
fn costs_follow_the_penalty_terms() {
    let inst = AlspInstance::new(vec![plane(0.0, 10.0, 30.0, 1.0, 2.0)], vec![vec![0.0]], 1).unwrap();
    let on_target = LandingSchedule::new(&inst, vec![10.0], vec![0]).unwrap();
    assert_eq!(alsp_cost(&inst, &on_target).unwrap(), 0.0);
    let late = LandingSchedule::new(&inst, vec![15.0], vec![0]).unwrap();
    assert_eq!(alsp_cost(&inst, &late).unwrap(), 10.0);
    let outside = LandingSchedule::new(&inst, vec![31.0], vec![0]).unwrap();
    assert_eq!(alsp_cost(&inst, &outside).unwrap(), 42.0 + BIG_M);
    assert!(!outside.feasible);
    let wrong_shape = LandingSchedule { times: vec![1.0, 2.0], runway_of: vec![0, 0], feasible: true };
    assert!(matches!(alsp_cost(&inst, &wrong_shape), Err(Error::Contract(_))));
}

fn small_alsp(n: usize, runways: usize, seed: u64, triangle: bool) -> AlspInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planes = (0..n)
        .map(|_| {
            let e = rng.random_range(0..8) as f64;
            let t = e + rng.random_range(0..6) as f64;
            let l = t + rng.random_range(2..10) as f64;
            plane(e, t, l, rng.random_range(0..5) as f64, rng.random_range(1..6) as f64)
        })
        .collect();
    // separations in [s, 2s] obey the triangle inequality
    let base = rng.random_range(1..4);
    let sep = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, triangle) {
                    (true, _) => 0.0,
                    (false, true) => rng.random_range(base..=2 * base) as f64,
                    (false, false) => rng.random_range(1..8) as f64,
                })
                .collect()
        })
        .collect();
    AlspInstance::new(planes, sep, runways).unwrap()
}

/// Cheapest feasible single-runway schedule over every integer landing-time
/// vector inside the windows; no ordering or decoding involved.
fn grid_optimum(inst: &AlspInstance) -> Option<f64> {
    let planes = inst.aircraft();
    let n = planes.len();
    let mut times: Vec<f64> = planes.iter().map(|a| a.earliest).collect();
    let runway_of = vec![0; n];
    let mut best: Option<f64> = None;
    loop {
        let s = LandingSchedule { times: times.clone(), runway_of: runway_of.clone(), feasible: true };
        if inst.violations(&s).is_empty() {
            let c: f64 = planes.iter().zip(&times).map(|(a, &x)| a.penalty(x)).sum();
            if best.is_none_or(|b| c < b) {
                best = Some(c);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            if times[i] < planes[i].latest {
                times[i] += 1.0;
                break;
            }
            times[i] = planes[i].earliest;
            i += 1;
        }
    }
}

#[test]
fn decoder_family_contains_the_grid_optimum() {
    let mut compared = 0;
    for seed in 0..60 {
        let inst = small_alsp(4, 1, seed, true);
        let Some(grid) = grid_optimum(&inst) else { continue };
        let oracle = alsp_exact_small(&inst).unwrap();
        assert!((oracle.best_mass - grid).abs() < 1e-9, "seed {seed}: decoder {} grid {grid}", oracle.best_mass);
        compared += 1;
    }
    assert!(compared >= 30, "only {compared} feasible instances");
}

#[test]
fn decoded_schedules_are_never_better_than_the_grid() {
    for seed in 0..40 {
        let inst = small_alsp(4, 1, 1000 + seed, false);
        let Some(grid) = grid_optimum(&inst) else { continue };
        let oracle = alsp_exact_small(&inst).unwrap();
        assert!(oracle.best_mass >= grid - 1e-9);
    }
}

#[test]
fn runway_oracle_is_at_most_the_greedy_decoder() {
    for seed in 0..20 {
        let inst = small_alsp(5, 2, seed, true);
        let exact = alsp_exact_small(&inst).unwrap();
        let greedy = brute_force_min(|p| inst.order_cost(p), 5, false).unwrap();
        assert!(exact.best_mass <= greedy.best_mass + 1e-9);
        let s = inst.decode_assigned(&exact.best_perm, exact.runway_of.as_ref().unwrap()).unwrap();
        assert_eq!(alsp_cost(&inst, &s).unwrap(), exact.best_mass);
    }
}

#[test]
fn reactor_never_beats_the_landing_oracle() {
    for seed in 0..50 {
        let runways = 1 + (seed as usize % 2);
        let inst = small_alsp(3 + (seed as usize % 3), runways, 500 + seed, seed % 3 != 0);
        let exact = alsp_exact_small(&inst).unwrap();
        let cfg = ReactorConfig { max_epochs: 100, ..ReactorConfig::default() }.with_seed(seed);
        let mut u = Universe::new(vec![GroupSpec::new("a", Instance::Alsp(inst), 12)], cfg).unwrap();
        let report = u.run_until_done().unwrap();
        assert!(report.groups[0].best_mass >= exact.best_mass - 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decoded_schedules_are_consistent(seed in any::<u64>(), n in 1usize..7, runways in 1usize..4) {
        let inst = small_alsp(n, runways, seed, seed % 2 == 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = acr::perm::random_permutation(n, &mut rng);
        let s = alsp_decode(&inst, &perm).unwrap();
        prop_assert_eq!(s.feasible, inst.violations(&s).is_empty());
        prop_assert_eq!(alsp_cost(&inst, &s).unwrap(), inst.order_cost(&perm));
        for (j, a) in inst.aircraft().iter().enumerate() {
            prop_assert!(s.times[j] >= a.earliest - 1e-9);
            prop_assert!(s.times[j] <= a.latest + 1e-9);
            prop_assert!(s.runway_of[j] < runways);
        }
        // a clamp to a window end may land an aircraft ahead of its
        // predecessor; without one the given order holds on each runway
        let unclamped = inst.aircraft().iter().zip(&s.times).all(|(a, &x)| x < a.latest - 1e-9);
        for w in perm.windows(2).filter(|_| s.feasible && unclamped) {
            if s.runway_of[w[0]] == s.runway_of[w[1]] {
                prop_assert!(s.times[w[0]] <= s.times[w[1]] + 1e-9);
            }
        }
    }

    #[test]
    fn tour_cost_is_rotation_invariant(seed in any::<u64>(), n in 2usize..12, shift in 0usize..12) {
        let t = tsp_random(n, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = acr::perm::random_permutation(n, &mut rng);
        let mut rotated = perm.clone();
        rotated.rotate_left(shift % n);
        prop_assert_eq!(t.tour_cost(&perm), t.tour_cost(&rotated));
    }
}
