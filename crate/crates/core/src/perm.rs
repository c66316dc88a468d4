//! Permutation helpers shared by every module.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// True iff `perm` contains every index in `0..n` exactly once.
pub fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &a in perm {
        if a >= n || seen[a] {
            return false;
        }
        seen[a] = true;
    }
    true
}

pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if is_permutation(perm, n) {
        Ok(())
    } else {
        Err(Error::contract(format!(
            "{perm:?} is not a permutation of 0..{n}"
        )))
    }
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Advance `perm` to its lexicographic successor. Returns false (leaving the
/// slice sorted ascending) once the last permutation has been passed.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

pub(crate) fn format_perm(perm: &[usize]) -> String {
    perm.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
