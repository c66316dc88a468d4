//! Repeated seeded runs and their aggregation into a report.

use rayon::prelude::*;

use crate::error::Result;
use crate::io::report::{GroupSummary, ReportDocument, RunRecord};
use crate::reactor::{GroupSpec, ReactionCounts, ReactorConfig, RunReport, Universe};

/// Runs the same universe `repeats` times with seeds `seed, seed + 1, ...`.
/// Every run is checked against the universe invariants before it is kept.
pub fn run_repeats(groups: &[GroupSpec], config: &ReactorConfig, repeats: usize) -> Result<Vec<RunReport>> {
    (0..repeats)
        .into_par_iter()
        .map(|i| {
            let cfg = config.clone().with_seed(config.seed.wrapping_add(i as u64));
            let mut u = Universe::new(groups.to_vec(), cfg)?;
            let report = u.run_until_done()?;
            u.check_invariants()?;
            Ok(report)
        })
        .collect()
}

/// Folds per-run reports into one summary per group.
pub fn summarize(groups: &[GroupSpec], base_seed: u64, runs: &[RunReport]) -> ReportDocument {
    let summaries = groups
        .iter()
        .enumerate()
        .map(|(g, spec)| {
            let mut best: Option<(f64, Vec<usize>)> = None;
            let mut counts = ReactionCounts::default();
            let mut records = Vec::with_capacity(runs.len());
            for (i, run) in runs.iter().enumerate() {
                let o = &run.groups[g];
                if best.as_ref().is_none_or(|(m, _)| o.best_mass < *m) {
                    best = Some((o.best_mass, o.best_perm.clone()));
                }
                counts += o.counts;
                records.push(RunRecord {
                    seed: base_seed.wrapping_add(i as u64),
                    best_mass: o.best_mass,
                    epochs: run.epochs,
                    saturation_epoch: o.saturation_epoch,
                });
            }
            let (best_mass, best_perm) = best.unwrap_or((f64::NAN, Vec::new()));
            GroupSummary {
                name: spec.name.clone(),
                kind: spec.instance.kind(),
                size: spec.instance.size(),
                divisor: spec.instance.display_divisor(),
                best_mass,
                best_perm,
                counts,
                runs: records,
            }
        })
        .collect();
    ReportDocument { groups: summaries }
}

/// [`run_repeats`] followed by [`summarize`].
pub fn run_batch(groups: &[GroupSpec], config: &ReactorConfig, repeats: usize) -> Result<ReportDocument> {
    let runs = run_repeats(groups, config, repeats)?;
    Ok(summarize(groups, config.seed, &runs))
}
