//! Flat `key=value` experiment configuration.
//!
//! One assignment per line, `#` starts a comment, lists are comma
//! separated and integer ranges `a..b` are inclusive. Absent keys take
//! their defaults; unknown keys are rejected. Any model parameter from
//! [`crate::params::PARAM_KEYS`] may be set as well.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{ConfigError, HarnessError};
use crate::params::ModelParams;
use crate::swarm::StrategyMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// Single- and multi-view curves from the same runs.
    Paired,
    /// Multi-view curve from an independent set of runs.
    Unpaired,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub strategies: Vec<StrategyMode>,
    pub drone_counts: Vec<usize>,
    pub reps: u32,
    pub ticks: u64,
    pub master_seed: u64,
    pub output_dir: PathBuf,
    pub pairing: Pairing,
    /// Replay the same match (per rep) under every strategy and drone count.
    pub common_random_numbers: bool,
    pub write_events: bool,
    pub params: ModelParams,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            strategies: vec![StrategyMode::Density, StrategyMode::FollowPlayers, StrategyMode::Random],
            drone_counts: (1..=40).collect(),
            reps: 100,
            ticks: 1800,
            master_seed: 2025,
            output_dir: PathBuf::from("out"),
            pairing: Pairing::Paired,
            common_random_numbers: false,
            write_events: true,
            params: ModelParams::default(),
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(ConfigError::Invalid(format!("{key}: expected true/false, got `{other}`"))),
    }
}

fn parse_int<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.trim()
        .parse()
        .map_err(|_| ConfigError::Invalid(format!("{key}: expected an integer, got `{}`", v.trim())))
}

/// Parses `1..5,10,20` style integer lists.
pub fn parse_counts(v: &str) -> Result<Vec<usize>, ConfigError> {
    let mut out = Vec::new();
    for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (parse_int("drone_counts", a)?, parse_int("drone_counts", b)?);
                if a > b {
                    return Err(ConfigError::Invalid(format!("drone_counts: empty range `{item}`")));
                }
                out.extend(a..=b);
            }
            None => out.push(parse_int("drone_counts", item)?),
        }
    }
    Ok(out)
}

/// Inverse of [`parse_counts`], collapsing consecutive runs into ranges.
pub fn format_counts(counts: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < counts.len() {
        let mut j = i;
        while j + 1 < counts.len() && counts[j + 1] == counts[j] + 1 {
            j += 1;
        }
        parts.push(if j > i + 1 {
            format!("{}..{}", counts[i], counts[j])
        } else if j == i + 1 {
            format!("{},{}", counts[i], counts[j])
        } else {
            counts[i].to_string()
        });
        i = j + 1;
    }
    parts.join(",")
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut seen = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
                line: line_no,
                msg: format!("expected key=value, got `{line}`"),
            })?;
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(ConfigError::Parse {
                    line: line_no,
                    msg: format!("duplicate key `{key}`"),
                });
            }
            cfg.apply(key, value.trim()).map_err(|e| match e {
                ConfigError::UnknownKey(_) => e,
                other => ConfigError::Parse {
                    line: line_no,
                    msg: other.to_string(),
                },
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "strategies" => {
                self.strategies = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect::<Result<_, _>>()?
            }
            "drone_counts" => self.drone_counts = parse_counts(value)?,
            "reps" => self.reps = parse_int(key, value)?,
            "ticks" => self.ticks = parse_int(key, value)?,
            "master_seed" => self.master_seed = parse_int(key, value)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            "pairing" => {
                self.pairing = match value {
                    "paired" => Pairing::Paired,
                    "unpaired" => Pairing::Unpaired,
                    other => return Err(ConfigError::Invalid(format!("pairing: expected paired|unpaired, got `{other}`"))),
                }
            }
            "common_random_numbers" => self.common_random_numbers = parse_bool(key, value)?,
            "write_events" => self.write_events = parse_bool(key, value)?,
            _ => self.params.set(key, value)?,
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.reps == 0 {
            return Err(ConfigError::Invalid("reps must be >= 1".into()));
        }
        if self.ticks == 0 {
            return Err(ConfigError::Invalid("ticks must be >= 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(ConfigError::Invalid("strategies must not be empty".into()));
        }
        if self.drone_counts.is_empty() {
            return Err(ConfigError::Invalid("drone_counts must not be empty".into()));
        }
        if let Some(&n) = self.drone_counts.iter().find(|&&n| n > usize::from(u16::MAX)) {
            return Err(ConfigError::Invalid(format!("drone count {n} is too large")));
        }
        self.params.validate()
    }

    /// Serialises every setting; [`Self::parse`] of the result gives back `self`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let strategies: Vec<&str> = self.strategies.iter().map(|m| m.name()).collect();
        let _ = writeln!(s, "strategies={}", strategies.join(","));
        let _ = writeln!(s, "drone_counts={}", format_counts(&self.drone_counts));
        let _ = writeln!(s, "reps={}", self.reps);
        let _ = writeln!(s, "ticks={}", self.ticks);
        let _ = writeln!(s, "master_seed={}", self.master_seed);
        let _ = writeln!(s, "output_dir={}", self.output_dir.display());
        let pairing = match self.pairing {
            Pairing::Paired => "paired",
            Pairing::Unpaired => "unpaired",
        };
        let _ = writeln!(s, "pairing={pairing}");
        let _ = writeln!(s, "common_random_numbers={}", self.common_random_numbers);
        let _ = writeln!(s, "write_events={}", self.write_events);
        s.push_str("# model parameters\n");
        for (k, v) in self.params.entries() {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(ExperimentConfig::parse(&text)?)
}

pub fn save_config(cfg: &ExperimentConfig, path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, cfg.to_text()).map_err(|e| HarnessError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let cfg = ExperimentConfig::parse("").unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        assert_eq!(cfg.reps, 100);
        assert_eq!(cfg.ticks, 1800);
        assert_eq!((cfg.params.field.length, cfg.params.field.width), (100.0, 70.0));
    }

    #[test]
    fn zero_reps_rejected() {
        assert!(matches!(
            ExperimentConfig::parse("reps=0"),
            Err(ConfigError::Invalid(_))
        ));
    }

    #[test]
    fn strategies_round_trip() {
        let cfg = ExperimentConfig::parse("strategies=density,random\n").unwrap();
        assert_eq!(cfg.strategies, vec![StrategyMode::Density, StrategyMode::Random]);
        assert_eq!(ExperimentConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn full_round_trip_with_overrides() {
        let text = "drone_counts=1..3,7,9,10\nreps=2\npairing=unpaired\norbit_radius=4.5\nhotspots=1:2,3:4\n";
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.drone_counts, vec![1, 2, 3, 7, 9, 10]);
        assert_eq!(format_counts(&cfg.drone_counts), "1..3,7,9,10");
        assert_eq!(ExperimentConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn errors_carry_line_or_key() {
        assert_eq!(
            ExperimentConfig::parse("reps=3\nbogus=1"),
            Err(ConfigError::UnknownKey("bogus".into()))
        );
        assert!(matches!(
            ExperimentConfig::parse("# c\n\nreps three"),
            Err(ConfigError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            ExperimentConfig::parse("reps=x"),
            Err(ConfigError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ExperimentConfig::parse("strategies=density,hover"),
            Err(ConfigError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let cfg = ExperimentConfig::parse("# header\n\nticks = 90  # short\n").unwrap();
        assert_eq!(cfg.ticks, 90);
    }
}
