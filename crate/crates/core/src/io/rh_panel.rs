//! RH panel text format: one marker per line, `<name> <vector>`, where the
//! vector uses `1` (present), `0` (absent) and `2` (unknown). Lines starting
//! with `#` are comments.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::problems::{Retention, RhPanel};

pub fn parse_rh_panel(text: &str) -> Result<RhPanel> {
    let mut names = Vec::new();
    let mut cells: Vec<Vec<Retention>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        last_line = line_no;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(line_no, "expected: <marker name> <retention vector>"));
        }
        let row = toks[1]
            .chars()
            .map(|c| {
                Retention::from_char(c)
                    .ok_or_else(|| Error::parse(line_no, format!("invalid retention character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = cells.first() {
            if row.len() != first.len() {
                return Err(Error::parse(
                    line_no,
                    format!("vector has {} hybrids, expected {}", row.len(), first.len()),
                ));
            }
        }
        if row.iter().all(|&c| c == Retention::Unknown) {
            return Err(Error::parse(line_no, "marker is untyped in every hybrid"));
        }
        names.push(toks[0].to_string());
        cells.push(row);
    }
    if cells.len() < 2 {
        return Err(Error::parse(
            last_line.max(1),
            format!("panel needs at least 2 markers, found {}", cells.len()),
        ));
    }
    RhPanel::new(names, cells)
}

pub fn write_rh_panel(panel: &RhPanel) -> String {
    let mut s = String::new();
    for (name, row) in panel.names().iter().zip(panel.cells()) {
        let v: String = row.iter().map(|c| c.to_char()).collect();
        let _ = writeln!(s, "{name} {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::rh_breaks;

    #[test]
    fn pair_with_one_break() {
        let p = parse_rh_panel("M1 101\nM2 001\n").unwrap();
        assert_eq!(p.markers(), 2);
        assert_eq!(p.hybrids(), 3);
        assert_eq!(rh_breaks(&p, &[0, 1]).unwrap(), 1);
        assert_eq!(parse_rh_panel(&write_rh_panel(&p)).unwrap(), p);
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_rh_panel("M1 101\nM2 301\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_rh_panel("M1 101\n\nM2 01\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_rh_panel("M1 101\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rh_panel("M1 101\nM2 222\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_rh_panel("M1 101 x\nM2 101\n"), Err(Error::Parse { line: 1, .. })));
    }
}
