//! OR-Library `airland` format.
//!
//! ```text
//! <aircraft count> <freeze time>
//! <appearance> <earliest> <target> <latest> <early penalty> <late penalty>
//! <separation to aircraft 1> ... <separation to aircraft p>   (may wrap lines)
//! ...
//! ```
//!
//! The runway count is not part of the file. Diagonal separation entries are
//! conventionally written as 99999 and are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::problems::{Aircraft, AlspInstance};

const DIAGONAL: &str = "99999";

fn numbers(line: &str, line_no: usize) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(line_no, format!("expected a number, found {tok:?}")))
        })
        .collect()
}

/// Parses an airland file. The instance has one runway; use
/// [`AlspInstance::with_runways`] to change that.
pub fn parse_airland(text: &str) -> Result<AlspInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty airland file"))?;
    let head = numbers(header, hl)?;
    if head.len() != 2 || head[0] < 1.0 || head[0].fract() != 0.0 {
        return Err(Error::parse(hl, "header must be: <aircraft count> <freeze time>"));
    }
    let p = head[0] as usize;
    let freeze = head[1];

    let mut aircraft = Vec::with_capacity(p);
    let mut separation = Vec::with_capacity(p);
    let mut last_line = hl;
    for i in 0..p {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, format!("missing record for aircraft {}", i + 1)))?;
        let rec = numbers(line, ln)?;
        if rec.len() != 6 {
            return Err(Error::parse(
                ln,
                format!("aircraft {} record has {} fields, expected 6", i + 1, rec.len()),
            ));
        }
        let a = Aircraft {
            appearance: rec[0],
            earliest: rec[1],
            target: rec[2],
            latest: rec[3],
            early_penalty: rec[4],
            late_penalty: rec[5],
        };
        if !(a.earliest <= a.target && a.target <= a.latest) {
            return Err(Error::Validation(format!(
                "line {ln}: aircraft {} window violates e <= t <= l",
                i + 1
            )));
        }
        if a.early_penalty < 0.0 || a.late_penalty < 0.0 {
            return Err(Error::Validation(format!(
                "line {ln}: aircraft {} has a negative penalty coefficient",
                i + 1
            )));
        }
        aircraft.push(a);
        last_line = ln;

        let mut row = Vec::with_capacity(p);
        while row.len() < p {
            let (ln, line) = lines.next().ok_or_else(|| {
                Error::parse(last_line, format!("separation row of aircraft {} is short", i + 1))
            })?;
            let vals = numbers(line, ln)?;
            if row.len() + vals.len() > p {
                return Err(Error::parse(
                    ln,
                    format!("separation row of aircraft {} has more than {p} entries", i + 1),
                ));
            }
            row.extend(vals);
            last_line = ln;
        }
        separation.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "unexpected data after the last aircraft"));
    }
    AlspInstance::new(aircraft, separation, 1).map(|a| a.with_freeze_time(freeze))
}

pub fn write_airland(inst: &AlspInstance) -> String {
    let mut s = String::new();
    let p = inst.len();
    let _ = writeln!(s, " {p} {}", inst.freeze_time());
    for (i, a) in inst.aircraft().iter().enumerate() {
        let _ = writeln!(
            s,
            " {} {} {} {} {} {}",
            a.appearance, a.earliest, a.target, a.latest, a.early_penalty, a.late_penalty
        );
        let row: Vec<String> = (0..p)
            .map(|j| {
                if i == j {
                    DIAGONAL.to_string()
                } else {
                    inst.separation(i, j).to_string()
                }
            })
            .collect();
        let _ = writeln!(s, " {}", row.join(" "));
    }
    s
}
