//! Static aircraft landing scheduling.
//!
//! A molecule is a landing order. [`AlspInstance::decode`] turns an order into
//! concrete runway assignments and landing times:
//!
//! 1. Aircraft are taken in order. Each goes to the runway on which its
//!    earliest separation-feasible time is smallest (lowest index on ties),
//!    lands no earlier than its target, and is clamped to its latest time if
//!    separation pushes it past the window.
//! 2. If that pass stayed inside every window, the landing times on each
//!    runway are re-optimized for the fixed runway sequence. With the
//!    sequence fixed the problem is an isotonic regression with convex,
//!    piecewise-linear costs, solved exactly by pooling adjacent violators.
//!    The refined times replace the greedy ones only when they satisfy every
//!    pairwise separation and do not cost more.

use crate::error::{Error, Result};
use crate::perm::check_permutation;

/// Surcharge added per aircraft that breaks its window or a separation.
pub const BIG_M: f64 = 1e7;

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aircraft {
    /// Appearance time; carried for file round-trips, unused by the objective.
    pub appearance: f64,
    pub earliest: f64,
    pub target: f64,
    pub latest: f64,
    /// Cost per unit time of landing before the target.
    pub early_penalty: f64,
    /// Cost per unit time of landing after the target.
    pub late_penalty: f64,
}

impl Aircraft {
    pub fn penalty(&self, x: f64) -> f64 {
        self.early_penalty * (self.target - x).max(0.0) + self.late_penalty * (x - self.target).max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlspInstance {
    aircraft: Vec<Aircraft>,
    separation: Vec<f64>,
    runways: usize,
    freeze_time: f64,
}

/// Decoded landing plan, indexed by aircraft.
#[derive(Debug, Clone, PartialEq)]
pub struct LandingSchedule {
    pub times: Vec<f64>,
    pub runway_of: Vec<usize>,
    pub feasible: bool,
}

impl LandingSchedule {
    /// A hand-built schedule. Feasibility is evaluated against `instance`.
    pub fn new(instance: &AlspInstance, times: Vec<f64>, runway_of: Vec<usize>) -> Result<Self> {
        let mut s = LandingSchedule {
            times,
            runway_of,
            feasible: false,
        };
        instance.check_shape(&s)?;
        s.feasible = instance.violations(&s).is_empty();
        Ok(s)
    }
}

impl AlspInstance {
    /// `separation[i][j]` is the gap required when `i` lands before `j` on
    /// the same runway. Diagonal entries are ignored and stored as zero.
    pub fn new(aircraft: Vec<Aircraft>, separation: Vec<Vec<f64>>, runways: usize) -> Result<Self> {
        let n = aircraft.len();
        if n == 0 {
            return Err(Error::Validation("no aircraft".into()));
        }
        if runways == 0 {
            return Err(Error::Validation("runway count must be positive".into()));
        }
        for (i, a) in aircraft.iter().enumerate() {
            let vals = [a.appearance, a.earliest, a.target, a.latest, a.early_penalty, a.late_penalty];
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::Validation(format!("aircraft {i}: non-finite field")));
            }
            if !(a.earliest <= a.target && a.target <= a.latest) {
                return Err(Error::Validation(format!(
                    "aircraft {i}: window violates e <= t <= l ({} / {} / {})",
                    a.earliest, a.target, a.latest
                )));
            }
            if a.early_penalty < 0.0 || a.late_penalty < 0.0 {
                return Err(Error::Validation(format!("aircraft {i}: negative penalty coefficient")));
            }
        }
        if separation.len() != n {
            return Err(Error::Validation(format!(
                "separation matrix has {} rows, expected {n}",
                separation.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in separation.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "separation row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &s) in row.iter().enumerate() {
                if i == j {
                    flat.push(0.0);
                } else if !s.is_finite() || s < 0.0 {
                    return Err(Error::Validation(format!("separation s[{i}][{j}] = {s} is not a nonnegative number")));
                } else {
                    flat.push(s);
                }
            }
        }
        Ok(AlspInstance {
            aircraft,
            separation: flat,
            runways,
            freeze_time: 0.0,
        })
    }

    pub fn with_runways(mut self, runways: usize) -> Result<Self> {
        if runways == 0 {
            return Err(Error::Validation("runway count must be positive".into()));
        }
        self.runways = runways;
        Ok(self)
    }

    pub fn with_freeze_time(mut self, freeze_time: f64) -> Self {
        self.freeze_time = freeze_time;
        self
    }

    pub fn len(&self) -> usize {
        self.aircraft.len()
    }

    pub fn is_empty(&self) -> bool {
        self.aircraft.is_empty()
    }

    pub fn runways(&self) -> usize {
        self.runways
    }

    pub fn freeze_time(&self) -> f64 {
        self.freeze_time
    }

    pub fn aircraft(&self) -> &[Aircraft] {
        &self.aircraft
    }

    #[inline]
    pub fn separation(&self, i: usize, j: usize) -> f64 {
        self.separation[i * self.aircraft.len() + j]
    }

    /// Decodes a landing order with greedy runway choice. `perm` is assumed valid.
    pub fn decode(&self, perm: &[usize]) -> LandingSchedule {
        self.decode_inner(perm, None)
    }

    /// Decodes a landing order with a fixed runway per aircraft.
    pub fn decode_assigned(&self, perm: &[usize], runway_of: &[usize]) -> Result<LandingSchedule> {
        check_permutation(perm, self.len())?;
        if runway_of.len() != self.len() || runway_of.iter().any(|&r| r >= self.runways) {
            return Err(Error::contract(format!(
                "runway assignment {runway_of:?} invalid for {} aircraft on {} runways",
                self.len(),
                self.runways
            )));
        }
        Ok(self.decode_inner(perm, Some(runway_of)))
    }

    /// Mass of a landing order: decoded penalty cost plus surcharges.
    pub fn order_cost(&self, perm: &[usize]) -> f64 {
        self.schedule_cost(&self.decode(perm))
    }

    fn decode_inner(&self, perm: &[usize], fixed: Option<&[usize]>) -> LandingSchedule {
        let (mut schedule, mut sequences, mut clamped) = self.forward_pass(perm, fixed, true);
        if clamped {
            // waiting for targets can squeeze later aircraft out of their
            // windows; landing everyone as early as possible cannot
            (schedule, sequences, clamped) = self.forward_pass(perm, fixed, false);
        }
        if !clamped {
            self.refine(&mut schedule, &sequences);
        }
        schedule.feasible = self.violations(&schedule).is_empty();
        schedule
    }

    /// Lands aircraft one by one in `perm` order at the earliest separated
    /// time, raised to the target when `to_target` is set and clamped to the
    /// window end. Also returns each runway's landing sequence and whether
    /// any clamp happened.
    fn forward_pass(
        &self,
        perm: &[usize],
        fixed: Option<&[usize]>,
        to_target: bool,
    ) -> (LandingSchedule, Vec<Vec<usize>>, bool) {
        let n = self.len();
        let mut times = vec![0.0; n];
        let mut runway_of = vec![0; n];
        let mut sequences: Vec<Vec<usize>> = vec![Vec::new(); self.runways];
        let mut clamped = false;

        for &j in perm {
            let a = &self.aircraft[j];
            let earliest_on = |r: usize| {
                sequences[r]
                    .iter()
                    .fold(a.earliest, |x, &i| x.max(times[i] + self.separation(i, j)))
            };
            let (mut x, r) = match fixed {
                Some(assign) => (earliest_on(assign[j]), assign[j]),
                None => {
                    let mut best = (earliest_on(0), 0);
                    for r in 1..self.runways {
                        let x = earliest_on(r);
                        if x < best.0 {
                            best = (x, r);
                        }
                    }
                    best
                }
            };
            if to_target && x < a.target {
                x = a.target;
            }
            if x > a.latest + EPS {
                clamped = true;
                x = a.latest;
            }
            times[j] = x;
            runway_of[j] = r;
            sequences[r].push(j);
        }

        let schedule = LandingSchedule {
            times,
            runway_of,
            feasible: false,
        };
        (schedule, sequences, clamped)
    }

    fn refine(&self, schedule: &mut LandingSchedule, sequences: &[Vec<usize>]) {
        let mut candidate = schedule.times.clone();
        for seq in sequences {
            match self.optimal_times(seq) {
                Some(ts) => {
                    for (&j, x) in seq.iter().zip(ts) {
                        candidate[j] = x;
                    }
                }
                None => return,
            }
        }
        let refined = LandingSchedule {
            times: candidate,
            runway_of: schedule.runway_of.clone(),
            feasible: false,
        };
        if self.violations(&refined).is_empty()
            && self.schedule_cost(&refined) <= self.schedule_cost(schedule) + EPS
        {
            schedule.times = refined.times;
        }
    }

    /// Cost-minimizing landing times for a fixed runway sequence, honoring
    /// windows and the separation between consecutive landings. Returns
    /// `None` if the pooled windows become empty.
    fn optimal_times(&self, seq: &[usize]) -> Option<Vec<f64>> {
        // Shift x_k by the cumulative consecutive separation so the chain
        // x_k >= x_{k-1} + s becomes y_k >= y_{k-1}.
        let mut offsets = Vec::with_capacity(seq.len());
        let mut acc = 0.0;
        for (k, &j) in seq.iter().enumerate() {
            if k > 0 {
                acc += self.separation(seq[k - 1], j);
            }
            offsets.push(acc);
        }
        let members: Vec<Shifted> = seq
            .iter()
            .zip(&offsets)
            .map(|(&j, &o)| {
                let a = &self.aircraft[j];
                Shifted {
                    lo: a.earliest - o,
                    hi: a.latest - o,
                    target: a.target - o,
                    early: a.early_penalty,
                    late: a.late_penalty,
                }
            })
            .collect();

        let mut blocks: Vec<Block> = Vec::with_capacity(seq.len());
        for k in 0..members.len() {
            let mut block = Block {
                start: k,
                end: k + 1,
                lo: members[k].lo,
                hi: members[k].hi,
                value: 0.0,
            };
            block.value = block.argmin(&members)?;
            blocks.push(block);
            while blocks.len() >= 2 && blocks[blocks.len() - 2].value > blocks[blocks.len() - 1].value + EPS {
                let last = blocks.pop().unwrap();
                let prev = blocks.last_mut().unwrap();
                prev.end = last.end;
                prev.lo = prev.lo.max(last.lo);
                prev.hi = prev.hi.min(last.hi);
                prev.value = prev.argmin(&members)?;
            }
        }

        let mut out = vec![0.0; seq.len()];
        for b in &blocks {
            for k in b.start..b.end {
                out[k] = b.value + offsets[k];
            }
        }
        Some(out)
    }

    fn check_shape(&self, schedule: &LandingSchedule) -> Result<()> {
        let n = self.len();
        if schedule.times.len() != n || schedule.runway_of.len() != n {
            return Err(Error::contract(format!(
                "schedule covers {} times / {} runways, instance has {n} aircraft",
                schedule.times.len(),
                schedule.runway_of.len()
            )));
        }
        if let Some(&r) = schedule.runway_of.iter().find(|&&r| r >= self.runways) {
            return Err(Error::contract(format!("runway {r} out of range")));
        }
        Ok(())
    }

    /// Aircraft that land outside their window, or too soon after another
    /// aircraft that landed no later on the same runway.
    pub fn violations(&self, schedule: &LandingSchedule) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&j| {
                let a = &self.aircraft[j];
                let xj = schedule.times[j];
                if xj < a.earliest - EPS || xj > a.latest + EPS {
                    return true;
                }
                (0..n).any(|i| {
                    i != j
                        && schedule.runway_of[i] == schedule.runway_of[j]
                        && schedule.times[i] <= xj
                        && xj < schedule.times[i] + self.separation(i, j) - EPS
                })
            })
            .collect()
    }

    fn schedule_cost(&self, schedule: &LandingSchedule) -> f64 {
        let penalty: f64 = self
            .aircraft
            .iter()
            .zip(&schedule.times)
            .map(|(a, &x)| a.penalty(x))
            .sum();
        penalty + BIG_M * self.violations(schedule).len() as f64
    }
}

#[derive(Debug, Clone, Copy)]
struct Shifted {
    lo: f64,
    hi: f64,
    target: f64,
    early: f64,
    late: f64,
}

impl Shifted {
    fn cost(&self, y: f64) -> f64 {
        self.early * (self.target - y).max(0.0) + self.late * (y - self.target).max(0.0)
    }
}

#[derive(Debug, Clone, Copy)]
struct Block {
    start: usize,
    end: usize,
    lo: f64,
    hi: f64,
    value: f64,
}

impl Block {
    /// Minimizer of the pooled cost over `[lo, hi]`; the largest one on ties.
    fn argmin(&self, members: &[Shifted]) -> Option<f64> {
        if self.lo > self.hi + EPS {
            return None;
        }
        let hi = self.hi.max(self.lo);
        let pooled = &members[self.start..self.end];
        let total = |y: f64| pooled.iter().map(|m| m.cost(y)).sum::<f64>();
        let mut best_y = hi;
        let mut best = total(hi);
        let candidates = pooled
            .iter()
            .map(|m| m.target.clamp(self.lo, hi))
            .chain(std::iter::once(self.lo));
        for y in candidates {
            let c = total(y);
            if c < best - EPS || (c <= best + EPS && y > best_y) {
                best = c;
                best_y = y;
            }
        }
        Some(best_y)
    }
}

/// Decodes `perm` into a landing schedule.
pub fn alsp_decode(instance: &AlspInstance, perm: &[usize]) -> Result<LandingSchedule> {
    check_permutation(perm, instance.len())?;
    Ok(instance.decode(perm))
}

/// Total early/late penalty of `schedule`, plus [`BIG_M`] for every aircraft
/// involved in a window or separation violation.
pub fn alsp_cost(instance: &AlspInstance, schedule: &LandingSchedule) -> Result<f64> {
    instance.check_shape(schedule)?;
    Ok(instance.schedule_cost(schedule))
}
