//! Result documents: aligned tables for people, `key=value` lines for tools.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::format_perm;
use crate::problems::ProblemKind;
use crate::reactor::ReactionCounts;

const MACHINE_HEADER: &str = "format=acr-report-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Machine,
}

/// Outcome of one seeded run for one group.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub best_mass: f64,
    pub epochs: u64,
    pub saturation_epoch: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub name: String,
    pub kind: ProblemKind,
    pub size: usize,
    /// Reported metric is `mass / divisor` (coordinate scale for TSP, marker
    /// count for RH, 1 for ALSP).
    pub divisor: f64,
    pub best_mass: f64,
    pub best_perm: Vec<usize>,
    pub counts: ReactionCounts,
    pub runs: Vec<RunRecord>,
}

impl GroupSummary {
    pub fn metric(&self, mass: f64) -> f64 {
        mass / self.divisor
    }

    pub fn best_metric(&self) -> f64 {
        self.metric(self.best_mass)
    }

    /// Mean of the per-run best metric.
    pub fn mean(&self) -> f64 {
        let n = self.runs.len() as f64;
        self.runs.iter().map(|r| self.metric(r.best_mass)).sum::<f64>() / n
    }

    /// Sample standard deviation (n - 1 denominator); `None` below 2 runs.
    pub fn stddev(&self) -> Option<f64> {
        let n = self.runs.len();
        if n < 2 {
            return None;
        }
        let mean = self.mean();
        let ss: f64 = self
            .runs
            .iter()
            .map(|r| (self.metric(r.best_mass) - mean).powi(2))
            .sum();
        Some((ss / (n - 1) as f64).sqrt())
    }

    pub fn saturated_runs(&self) -> usize {
        self.runs.iter().filter(|r| r.saturation_epoch.is_some()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportDocument {
    pub groups: Vec<GroupSummary>,
}

/// `mean (stddev)` with two decimals, or just the mean for a single run.
pub fn mean_cell(mean: f64, stddev: Option<f64>) -> String {
    match stddev {
        Some(sd) => format!("{mean:.2} ({sd:.2})"),
        None => format!("{mean:.2}"),
    }
}

pub fn write_report(report: &ReportDocument, format: ReportFormat) -> String {
    match format {
        ReportFormat::Table => write_table(report),
        ReportFormat::Machine => write_machine(report),
    }
}

fn write_table(report: &ReportDocument) -> String {
    let multi = report.groups.iter().any(|g| g.runs.len() > 1);
    let mean_title = if multi { "mean (std. dev.)" } else { "mean" };
    let mut rows = vec![vec![
        "group".to_string(),
        "kind".to_string(),
        "size".to_string(),
        "runs".to_string(),
        "metric".to_string(),
        "best".to_string(),
        mean_title.to_string(),
        "saturated".to_string(),
        "R1".to_string(),
        "R2".to_string(),
        "R3".to_string(),
    ]];
    for g in &report.groups {
        let metric = match g.kind {
            ProblemKind::Tsp if g.divisor != 1.0 => format!("tour/{}", g.divisor),
            ProblemKind::Tsp => "tour".to_string(),
            ProblemKind::Alsp => "penalty".to_string(),
            ProblemKind::Rh => "breaks/marker".to_string(),
        };
        rows.push(vec![
            g.name.clone(),
            g.kind.to_string(),
            g.size.to_string(),
            g.runs.len().to_string(),
            metric,
            format!("{:.2}", g.best_metric()),
            mean_cell(g.mean(), g.stddev()),
            format!("{}/{}", g.saturated_runs(), g.runs.len()),
            g.counts.r1.to_string(),
            g.counts.r2.to_string(),
            g.counts.r3.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, w))| {
                if c < 2 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        let _ = writeln!(s, "{}", cells.join("  ").trim_end());
        if i == 0 {
            let total = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
            let _ = writeln!(s, "{}", "-".repeat(total));
        }
    }
    s
}

fn write_machine(report: &ReportDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{MACHINE_HEADER}");
    let _ = writeln!(s, "groups={}", report.groups.len());
    for (i, g) in report.groups.iter().enumerate() {
        let p = format!("group.{i}");
        let _ = writeln!(s, "{p}.name={}", g.name);
        let _ = writeln!(s, "{p}.kind={}", g.kind);
        let _ = writeln!(s, "{p}.size={}", g.size);
        let _ = writeln!(s, "{p}.divisor={}", g.divisor);
        let _ = writeln!(s, "{p}.best_mass={}", g.best_mass);
        let _ = writeln!(s, "{p}.best_metric={}", g.best_metric());
        let _ = writeln!(s, "{p}.best_perm={}", format_perm(&g.best_perm));
        let _ = writeln!(s, "{p}.r1={}", g.counts.r1);
        let _ = writeln!(s, "{p}.r2={}", g.counts.r2);
        let _ = writeln!(s, "{p}.r3={}", g.counts.r3);
        let _ = writeln!(s, "{p}.decayed={}", g.counts.decayed);
        let _ = writeln!(s, "{p}.runs={}", g.runs.len());
        for (j, r) in g.runs.iter().enumerate() {
            let q = format!("{p}.run.{j}");
            let _ = writeln!(s, "{q}.seed={}", r.seed);
            let _ = writeln!(s, "{q}.best_mass={}", r.best_mass);
            let _ = writeln!(s, "{q}.epochs={}", r.epochs);
            let sat = r.saturation_epoch.map_or("none".to_string(), |e| e.to_string());
            let _ = writeln!(s, "{q}.saturation_epoch={sat}");
        }
        let _ = writeln!(s, "{p}.mean={}", g.mean());
        if let Some(sd) = g.stddev() {
            let _ = writeln!(s, "{p}.stddev={sd}");
        }
    }
    s
}

struct Fields {
    map: BTreeMap<String, (usize, String)>,
    // missing keys are reported at the end of the document
    last_line: usize,
}

impl Fields {
    fn take(&mut self, key: &str) -> Result<(usize, String)> {
        self.map
            .remove(key)
            .ok_or_else(|| Error::parse(self.last_line, format!("missing key {key}")))
    }

    fn get<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (line, v) = self.take(key)?;
        v.parse::<T>()
            .map_err(|_| Error::parse(line, format!("bad value {v:?} for {key}")))
    }
}

/// Parses the `machine` format back into a report. Derived keys (`mean`,
/// `stddev`, `best_metric`) are accepted and ignored.
pub fn parse_machine_report(text: &str) -> Result<ReportDocument> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l == MACHINE_HEADER => {}
        _ => return Err(Error::parse(1, format!("expected {MACHINE_HEADER}"))),
    }
    let mut f = Fields {
        map: BTreeMap::new(),
        last_line: text.lines().count().max(1),
    };
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(i + 1, "expected key=value"))?;
        if f.map.insert(k.to_string(), (i + 1, v.to_string())).is_some() {
            return Err(Error::parse(i + 1, format!("duplicate key {k}")));
        }
    }
    let n: usize = f.get("groups")?;
    let mut groups = Vec::with_capacity(n);
    for i in 0..n {
        let p = format!("group.{i}");
        let (kl, kind) = f.take(&format!("{p}.kind"))?;
        let kind = ProblemKind::parse(&kind).ok_or_else(|| Error::parse(kl, format!("unknown kind {kind}")))?;
        let (pl, perm) = f.take(&format!("{p}.best_perm"))?;
        let best_perm = if perm.is_empty() {
            Vec::new()
        } else {
            perm.split(',')
                .map(|t| t.parse::<usize>().map_err(|_| Error::parse(pl, format!("bad atom {t:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        let runs_n: usize = f.get(&format!("{p}.runs"))?;
        let mut g = GroupSummary {
            name: f.take(&format!("{p}.name"))?.1,
            kind,
            size: f.get(&format!("{p}.size"))?,
            divisor: f.get(&format!("{p}.divisor"))?,
            best_mass: f.get(&format!("{p}.best_mass"))?,
            best_perm,
            counts: ReactionCounts {
                r1: f.get(&format!("{p}.r1"))?,
                r2: f.get(&format!("{p}.r2"))?,
                r3: f.get(&format!("{p}.r3"))?,
                decayed: f.get(&format!("{p}.decayed"))?,
            },
            runs: Vec::with_capacity(runs_n),
        };
        for j in 0..runs_n {
            let q = format!("{p}.run.{j}");
            let (sl, sat) = f.take(&format!("{q}.saturation_epoch"))?;
            let saturation_epoch = match sat.as_str() {
                "none" => None,
                v => Some(
                    v.parse::<u64>()
                        .map_err(|_| Error::parse(sl, format!("bad saturation epoch {v:?}")))?,
                ),
            };
            g.runs.push(RunRecord {
                seed: f.get(&format!("{q}.seed"))?,
                best_mass: f.get(&format!("{q}.best_mass"))?,
                epochs: f.get(&format!("{q}.epochs"))?,
                saturation_epoch,
            });
        }
        for derived in ["mean", "stddev", "best_metric"] {
            f.map.remove(&format!("{p}.{derived}"));
        }
        groups.push(g);
    }
    if let Some((k, (line, _))) = f.map.into_iter().next() {
        return Err(Error::parse(line, format!("unexpected key {k}")));
    }
    Ok(ReportDocument { groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rh_group(per_marker: &[f64]) -> GroupSummary {
        let m = 100.0;
        GroupSummary {
            name: "chr1".into(),
            kind: ProblemKind::Rh,
            size: 100,
            divisor: m,
            best_mass: per_marker.iter().cloned().fold(f64::MAX, f64::min) * m,
            best_perm: (0..100).collect(),
            counts: ReactionCounts { r1: 10, r2: 3, r3: 2, decayed: 5 },
            runs: per_marker
                .iter()
                .enumerate()
                .map(|(i, &b)| RunRecord {
                    seed: i as u64,
                    best_mass: b * m,
                    epochs: 50,
                    saturation_epoch: if i % 2 == 0 { Some(40) } else { None },
                })
                .collect(),
        }
    }

    #[test]
    fn mean_and_sample_stddev() {
        let g = rh_group(&[2.82, 2.94]);
        assert!((g.mean() - 2.88).abs() < 1e-12);
        // sample stddev of {2.82, 2.94} = 0.06 * sqrt(2)
        assert!((g.stddev().unwrap() - 0.06 * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(mean_cell(2.88, Some(0.06)), "2.88 (0.06)");
    }

    #[test]
    fn single_run_omits_stddev() {
        let g = rh_group(&[2.5]);
        assert_eq!(g.stddev(), None);
        let doc = ReportDocument { groups: vec![g] };
        let table = write_report(&doc, ReportFormat::Table);
        assert!(table.contains("2.50"));
        assert!(!table.contains('('));
        assert!(!write_report(&doc, ReportFormat::Machine).contains("stddev"));
    }

    #[test]
    fn table_shows_mean_with_stddev() {
        let doc = ReportDocument { groups: vec![rh_group(&[2.82, 2.94])] };
        let table = write_report(&doc, ReportFormat::Table);
        assert!(table.contains("2.88 (0.08)"), "{table}");
        assert!(table.contains("breaks/marker"));
    }

    #[test]
    fn machine_round_trip() {
        let doc = ReportDocument { groups: vec![rh_group(&[2.82, 2.94, 3.1]), rh_group(&[1.0])] };
        let text = write_report(&doc, ReportFormat::Machine);
        assert_eq!(parse_machine_report(&text).unwrap(), doc);
    }

    #[test]
    fn machine_rejects_garbage() {
        assert!(parse_machine_report("groups=0\n").is_err());
        let doc = ReportDocument { groups: vec![rh_group(&[1.0])] };
        let text = write_report(&doc, ReportFormat::Machine);
        let bad = text.replace("group.0.size=100", "group.0.size=lots");
        assert!(matches!(parse_machine_report(&bad), Err(Error::Parse { line: 5, .. })));
        let extra = format!("{text}group.0.colour=blue\n");
        assert!(parse_machine_report(&extra).is_err());
    }
}
