#![allow(dead_code)]

use acr::io::airland::parse_airland;
use acr::io::rh_panel::parse_rh_panel;
use acr::io::tsplib::parse_tsplib;
use acr::problems::Instance;
use acr::{Error, TspInstance};

/// Three cities whose clockwise tours cost `forward` and counter-clockwise
/// tours cost `backward`, so a pool can hold exactly two distinct masses.
pub fn two_mass_tsp(forward: f64, backward: f64) -> Instance {
    let (f, b) = (forward / 4.0, backward / 4.0);
    Instance::Tsp(
        TspInstance::from_matrix(vec![
            vec![0.0, 2.0 * f, b],
            vec![2.0 * b, 0.0, f],
            vec![f, b, 0.0],
        ])
        .unwrap(),
    )
}

pub const FORWARD: [usize; 3] = [0, 1, 2];
pub const BACKWARD: [usize; 3] = [0, 2, 1];

pub fn uniform_tsp(n: usize) -> Instance {
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
        .collect();
    Instance::Tsp(TspInstance::from_matrix(rows).unwrap())
}

/// Exact tour length by Held-Karp dynamic programming over subsets.
pub fn held_karp(t: &TspInstance) -> f64 {
    let n = t.n();
    if n == 1 {
        return 0.0;
    }
    let full = 1usize << (n - 1);
    // dp[mask][j]: cheapest path from city 0 through `mask` (cities 1..n) ending at j+1
    let mut dp = vec![vec![f64::INFINITY; n - 1]; full];
    for j in 0..n - 1 {
        dp[1 << j][j] = t.cost(0, j + 1);
    }
    for mask in 1..full {
        for j in 0..n - 1 {
            let cur = dp[mask][j];
            if mask & (1 << j) == 0 || !cur.is_finite() {
                continue;
            }
            for k in 0..n - 1 {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let next = mask | (1 << k);
                let c = cur + t.cost(j + 1, k + 1);
                if c < dp[next][k] {
                    dp[next][k] = c;
                }
            }
        }
    }
    (0..n - 1)
        .map(|j| dp[full - 1][j] + t.cost(j + 1, 0))
        .fold(f64::INFINITY, f64::min)
}

/// Reference cycle crossover written independently of the library: walk the
/// cycle through values rather than positions.
pub fn reference_cx(p1: &[usize], p2: &[usize], start: usize) -> (Vec<usize>, Vec<usize>) {
    let mut on_cycle = vec![false; p1.len()];
    let mut value = p1[start];
    loop {
        let pos = p1.iter().position(|&v| v == value).unwrap();
        if on_cycle[pos] {
            break;
        }
        on_cycle[pos] = true;
        value = p2[pos];
    }
    let pick = |a: &[usize], b: &[usize]| -> Vec<usize> {
        (0..a.len()).map(|i| if on_cycle[i] { a[i] } else { b[i] }).collect()
    };
    (pick(p1, p2), pick(p2, p1))
}

pub const AIRLAND_PAIR: &str = " 2 10\n 54 129 155 559 10 10\n 99999 3\n 120 195 258 744 10 10\n 3 99999\n";

/// True for errors that name the offending line.
pub fn located(e: &Error) -> bool {
    match e {
        Error::Parse { line, .. } => *line >= 1,
        Error::Validation(m) => m.starts_with("line "),
        _ => false,
    }
}

/// Every malformed input named for the parsers, with the expected error kind.
pub fn malformed_cases() -> Vec<(&'static str, Result<(), Error>)> {
    let tri = "NAME : tri\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n";
    vec![
        ("tsplib unknown edge-weight type", parse_tsplib(&tri.replace("EUC_2D", "GEO")).map(|_| ())),
        ("tsplib dimension mismatch", parse_tsplib(&tri.replace("DIMENSION : 3", "DIMENSION : 4")).map(|_| ())),
        ("tsplib non-numeric cell", parse_tsplib(&tri.replace("2 3 0", "2 3 x")).map(|_| ())),
        ("airland e > t", parse_airland(&AIRLAND_PAIR.replace("54 129 155", "54 160 155")).map(|_| ())),
        ("airland t > l", parse_airland(&AIRLAND_PAIR.replace("155 559", "600 559")).map(|_| ())),
        ("airland row length mismatch", parse_airland(&AIRLAND_PAIR.replace("99999 3\n", "99999 3 4\n")).map(|_| ())),
        ("airland negative penalty", parse_airland(&AIRLAND_PAIR.replace("559 10 10", "559 -1 10")).map(|_| ())),
        ("rh character outside 0/1/2", parse_rh_panel("M1 101\nM2 301\n").map(|_| ())),
        ("rh ragged vectors", parse_rh_panel("M1 101\nM2 0011\n").map(|_| ())),
        ("rh single marker", parse_rh_panel("M1 101\n").map(|_| ())),
    ]
}

