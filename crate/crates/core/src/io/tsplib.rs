//! TSPLIB-style instances: `EUC_2D` coordinates or an `EXPLICIT` full matrix.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::problems::TspInstance;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Section {
    Header,
    Coords,
    Weights,
    Done,
}

fn number(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::parse(line, format!("expected a number, found {tok:?}")))
}

/// Parses the supported TSPLIB dialect.
pub fn parse_tsplib(text: &str) -> Result<TspInstance> {
    let mut name = String::new();
    let mut comment = String::new();
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut weight_format: Option<String> = None;
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut section = Section::Header;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            section = Section::Done;
            continue;
        }
        if section == Section::Done {
            return Err(Error::parse(line_no, "content after EOF"));
        }
        match line {
            "NODE_COORD_SECTION" => {
                if weight_type.as_deref() != Some("EUC_2D") {
                    return Err(Error::parse(line_no, "NODE_COORD_SECTION requires EDGE_WEIGHT_TYPE EUC_2D"));
                }
                section = Section::Coords;
                continue;
            }
            "EDGE_WEIGHT_SECTION" => {
                if weight_type.as_deref() != Some("EXPLICIT") {
                    return Err(Error::parse(line_no, "EDGE_WEIGHT_SECTION requires EDGE_WEIGHT_TYPE EXPLICIT"));
                }
                if weight_format.as_deref() != Some("FULL_MATRIX") {
                    return Err(Error::parse(line_no, "only EDGE_WEIGHT_FORMAT FULL_MATRIX is supported"));
                }
                section = Section::Weights;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Header => {
                let Some((key, value)) = line.split_once(':') else {
                    return Err(Error::parse(line_no, format!("expected KEY : VALUE, found {line:?}")));
                };
                let value = value.trim();
                match key.trim() {
                    "NAME" => name = value.to_string(),
                    "COMMENT" => {
                        if !comment.is_empty() {
                            comment.push(' ');
                        }
                        comment.push_str(value);
                    }
                    "TYPE" => {
                        if value != "TSP" && value != "ATSP" {
                            return Err(Error::parse(line_no, format!("unsupported TYPE {value}")));
                        }
                    }
                    "DIMENSION" => {
                        let d = value
                            .parse::<usize>()
                            .map_err(|_| Error::parse(line_no, format!("bad DIMENSION {value:?}")))?;
                        dimension = Some(d);
                    }
                    "EDGE_WEIGHT_TYPE" => match value {
                        "EUC_2D" | "EXPLICIT" => weight_type = Some(value.to_string()),
                        other => {
                            return Err(Error::parse(line_no, format!("unknown EDGE_WEIGHT_TYPE {other}")))
                        }
                    },
                    "EDGE_WEIGHT_FORMAT" => weight_format = Some(value.to_string()),
                    "DISPLAY_DATA_TYPE" => {}
                    other => return Err(Error::parse(line_no, format!("unknown header key {other}"))),
                }
            }
            Section::Coords => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(Error::parse(line_no, "coordinate line must be: index x y"));
                }
                let index = toks[0]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad node index {:?}", toks[0])))?;
                if index != coords.len() + 1 {
                    return Err(Error::parse(
                        line_no,
                        format!("node index {index}, expected {}", coords.len() + 1),
                    ));
                }
                coords.push((number(toks[1], line_no)?, number(toks[2], line_no)?));
            }
            Section::Weights => {
                for tok in line.split_whitespace() {
                    weights.push(number(tok, line_no)?);
                }
            }
            Section::Done => unreachable!(),
        }
    }

    let n = dimension.ok_or_else(|| Error::parse(last_line, "missing DIMENSION"))?;
    let instance = match weight_type.as_deref() {
        Some("EUC_2D") => {
            if coords.len() != n {
                return Err(Error::parse(
                    last_line,
                    format!("DIMENSION {n} but {} coordinates", coords.len()),
                ));
            }
            TspInstance::euclidean(coords)
        }
        Some("EXPLICIT") => {
            if weights.len() != n * n {
                return Err(Error::parse(
                    last_line,
                    format!("DIMENSION {n} needs {} matrix entries, found {}", n * n, weights.len()),
                ));
            }
            TspInstance::from_matrix(weights.chunks(n).map(<[f64]>::to_vec).collect())
        }
        _ => return Err(Error::parse(last_line, "missing EDGE_WEIGHT_TYPE")),
    };
    instance
        .map(|t| t.with_name(name).with_comment(comment))
        .map_err(|e| match e {
            Error::Validation(m) => Error::parse(last_line, m),
            other => other,
        })
}

/// Writes an instance in the dialect it came from: coordinates when known,
/// otherwise the explicit full matrix.
pub fn write_tsplib(t: &TspInstance) -> String {
    let mut s = String::new();
    let n = t.n();
    let _ = writeln!(s, "NAME : {}", t.name());
    if !t.comment().is_empty() {
        let _ = writeln!(s, "COMMENT : {}", t.comment());
    }
    let _ = writeln!(s, "TYPE : {}", if t.is_symmetric() { "TSP" } else { "ATSP" });
    let _ = writeln!(s, "DIMENSION : {n}");
    match t.coords() {
        Some(coords) => {
            let _ = writeln!(s, "EDGE_WEIGHT_TYPE : EUC_2D");
            let _ = writeln!(s, "NODE_COORD_SECTION");
            for (i, (x, y)) in coords.iter().enumerate() {
                let _ = writeln!(s, "{} {x} {y}", i + 1);
            }
        }
        None => {
            let _ = writeln!(s, "EDGE_WEIGHT_TYPE : EXPLICIT");
            let _ = writeln!(s, "EDGE_WEIGHT_FORMAT : FULL_MATRIX");
            let _ = writeln!(s, "EDGE_WEIGHT_SECTION");
            for i in 0..n {
                let row: Vec<String> = t.row(i).iter().map(|c| c.to_string()).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
    }
    s.push_str("EOF\n");
    s
}
