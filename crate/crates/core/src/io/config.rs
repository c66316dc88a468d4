//! Run configuration file (TOML).
//!
//! ```toml
//! seed = 7
//! reactions_per_epoch = 200
//! max_epochs = 5000
//!
//! [[group]]
//! kind = "tsp"
//! path = "instances/oliver30.tsp"
//! capacity = 40
//!
//! [[group]]
//! kind = "alsp"
//! path = "instances/airland1.txt"
//! runways = 2
//! ```
//!
//! Every reactor parameter is optional and defaults to [`ReactorConfig::default`].
//! Unknown keys are rejected.

use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::problems::ProblemKind;
use crate::reactor::ReactorConfig;

/// Molecules per group when a capacity is not given.
pub const DEFAULT_CAPACITY: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupEntry {
    pub kind: ProblemKind,
    pub path: PathBuf,
    pub name: Option<String>,
    pub capacity: usize,
    pub runways: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub reactor: ReactorConfig,
    pub groups: Vec<GroupEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    reactions_per_epoch: Option<usize>,
    wall_probability: Option<f64>,
    heavy_quantile: Option<f64>,
    decay_fraction: Option<f64>,
    saturation_share: Option<f64>,
    saturation_tolerance: Option<f64>,
    saturation_patience: Option<u64>,
    max_epochs: Option<u64>,
    #[serde(default)]
    group: Vec<RawGroup>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    kind: String,
    path: PathBuf,
    name: Option<String>,
    capacity: Option<usize>,
    runways: Option<usize>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(1, |s| line_of(text, s.start));
        Error::parse(line, e.message().to_string())
    })?;
    let d = ReactorConfig::default();
    let reactor = ReactorConfig {
        seed: raw.seed.unwrap_or(d.seed),
        reactions_per_epoch: raw.reactions_per_epoch.or(d.reactions_per_epoch),
        wall_probability: raw.wall_probability.unwrap_or(d.wall_probability),
        heavy_quantile: raw.heavy_quantile.unwrap_or(d.heavy_quantile),
        decay_fraction: raw.decay_fraction.unwrap_or(d.decay_fraction),
        saturation_share: raw.saturation_share.unwrap_or(d.saturation_share),
        saturation_tolerance: raw.saturation_tolerance.unwrap_or(d.saturation_tolerance),
        saturation_patience: raw.saturation_patience.unwrap_or(d.saturation_patience),
        max_epochs: raw.max_epochs.unwrap_or(d.max_epochs),
    };
    reactor.validate()?;
    let groups = raw
        .group
        .into_iter()
        .map(|g| {
            let kind = ProblemKind::parse(&g.kind)
                .ok_or_else(|| Error::Config(format!("unknown group kind {:?}", g.kind)))?;
            if g.runways.is_some() && kind != ProblemKind::Alsp {
                return Err(Error::Config(format!("runways given for a {kind} group")));
            }
            Ok(GroupEntry {
                kind,
                path: g.path,
                name: g.name,
                capacity: g.capacity.unwrap_or(DEFAULT_CAPACITY),
                runways: g.runways,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConfigFile { reactor, groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_for_missing_keys() {
        let c = parse_config("").unwrap();
        assert_eq!(c.reactor, ReactorConfig::default());
        assert!(c.groups.is_empty());
    }

    #[test]
    fn full_document() {
        let text = r#"
seed = 3
reactions_per_epoch = 200
decay_fraction = 0.1

[[group]]
kind = "tsp"
path = "a.tsp"
capacity = 12

[[group]]
kind = "alsp"
path = "b.txt"
runways = 2
"#;
        let c = parse_config(text).unwrap();
        assert_eq!(c.reactor.seed, 3);
        assert_eq!(c.reactor.reactions_per_epoch, Some(200));
        assert_eq!(c.reactor.decay_fraction, 0.1);
        assert_eq!(c.groups.len(), 2);
        assert_eq!(c.groups[0].capacity, 12);
        assert_eq!(c.groups[1].capacity, DEFAULT_CAPACITY);
        assert_eq!(c.groups[1].runways, Some(2));
    }

    #[test]
    fn unknown_key_rejected_with_line() {
        let err = parse_config("seed = 1\ntemperature = 300\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn invalid_values() {
        assert!(matches!(parse_config("wall_probability = 2.0"), Err(Error::Config(_))));
        assert!(matches!(
            parse_config("[[group]]\nkind = \"maze\"\npath = \"x\"\n"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            parse_config("[[group]]\nkind = \"tsp\"\npath = \"x\"\nrunways = 2\n"),
            Err(Error::Config(_))
        ));
    }
}
