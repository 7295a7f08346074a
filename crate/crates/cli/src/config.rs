//! Sweep configuration: a TOML grid description.
//!
//! ```toml
//! a = [1, 4]            # inclusive range
//! b = [1, 4]
//! c = [1, 3]
//! inits = ["u", "v", "1,1", "3,7"]
//! enabled = ["thm2", "cor1"]
//! format = "json"       # or "csv"
//! expected_witnesses = 16
//!
//! [bounds]
//! default = 6
//! lemma3 = 8
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use horadam_core::{Error as CoreError, Params, Rational, SeqSpec};
use serde::{Deserialize, Serialize};

use crate::catalog::{Checker, CATALOG};

/// The grid shipped with the tool.
pub const DEFAULT_CONFIG: &str = include_str!("../config/default.toml");

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(#[from] toml::de::Error),
    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (expected json or csv)")),
        }
    }
}

/// A seed choice, instantiated per parameter triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Init {
    U,
    V,
    T,
    Pair(Rational, Rational),
}

impl Init {
    /// `Err` when the family does not exist for `params` (`t` needs `c = 1`).
    pub fn spec(&self, params: Params) -> Result<SeqSpec, CoreError> {
        match self {
            Init::U => Ok(SeqSpec::u(params)),
            Init::V => Ok(SeqSpec::v(params)),
            Init::T => SeqSpec::t(params),
            Init::Pair(w0, w1) => Ok(SeqSpec::general(params, w0.clone(), w1.clone())),
        }
    }
}

impl FromStr for Init {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "u" => Ok(Init::U),
            "v" => Ok(Init::V),
            "t" => Ok(Init::T),
            pair => {
                let (w0, w1) = pair
                    .split_once(',')
                    .ok_or_else(|| format!("`{s}` is not u, v, t or a pair `w0,w1`"))?;
                let parse = |x: &str| x.trim().parse::<Rational>().map_err(|e| e.to_string());
                Ok(Init::Pair(parse(w0)?, parse(w1)?))
            }
        }
    }
}

impl fmt::Display for Init {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Init::U => f.write_str("u"),
            Init::V => f.write_str("v"),
            Init::T => f.write_str("t"),
            Init::Pair(w0, w1) => write!(f, "{w0},{w1}"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    a: [i64; 2],
    b: [i64; 2],
    c: [i64; 2],
    inits: Vec<String>,
    enabled: Vec<String>,
    #[serde(default)]
    bounds: BTreeMap<String, u64>,
    #[serde(default)]
    format: Format,
    #[serde(default = "default_expected_witnesses")]
    expected_witnesses: usize,
}

fn default_expected_witnesses() -> usize {
    16
}

const DEFAULT_BOUND: u64 = 6;

fn range(field: &str, r: [i64; 2]) -> Result<(i64, i64), ConfigError> {
    if r[0] > r[1] {
        return Err(invalid(field, format!("empty range [{}, {}]", r[0], r[1])));
    }
    Ok((r[0], r[1]))
}

/// A validated grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub a: (i64, i64),
    pub b: (i64, i64),
    pub c: (i64, i64),
    pub inits: Vec<Init>,
    /// In catalog order, without duplicates.
    pub enabled: Vec<Checker>,
    pub default_bound: u64,
    pub bounds: BTreeMap<Checker, u64>,
    pub format: Format,
    /// How many negative-control witnesses the report lists.
    pub expected_witnesses: usize,
}

impl SweepConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        text.parse()
    }

    pub fn shipped() -> Self {
        DEFAULT_CONFIG.parse().expect("shipped config is valid")
    }

    /// Largest value of every index of `checker`.
    pub fn bound(&self, checker: Checker) -> u64 {
        self.bounds
            .get(&checker)
            .copied()
            .unwrap_or(self.default_bound)
    }
}

impl FromStr for SweepConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let raw: RawConfig = toml::from_str(text)?;
        let a = range("a", raw.a)?;
        let b = range("b", raw.b)?;
        let c = range("c", raw.c)?;
        if raw.inits.is_empty() {
            return Err(invalid("inits", "at least one init is required"));
        }
        let inits = raw
            .inits
            .iter()
            .enumerate()
            .map(|(i, s)| s.parse().map_err(|e| invalid(format!("inits[{i}]"), e)))
            .collect::<Result<Vec<Init>, _>>()?;
        if raw.enabled.is_empty() {
            return Err(invalid("enabled", "no checkers enabled"));
        }
        let mut enabled = raw
            .enabled
            .iter()
            .enumerate()
            .map(|(i, s)| s.parse().map_err(|e| invalid(format!("enabled[{i}]"), e)))
            .collect::<Result<Vec<Checker>, _>>()?;
        enabled.sort();
        enabled.dedup();
        let mut default_bound = DEFAULT_BOUND;
        let mut bounds = BTreeMap::new();
        for (key, &value) in &raw.bounds {
            if key == "default" {
                default_bound = value;
            } else {
                let checker: Checker = key
                    .parse()
                    .map_err(|e| invalid(format!("bounds.{key}"), e))?;
                bounds.insert(checker, value);
            }
        }
        for &checker in CATALOG.iter().filter(|c| enabled.contains(c)) {
            let bound = bounds.get(&checker).copied().unwrap_or(default_bound);
            let floor = checker.index_floor().iter().copied().max().unwrap_or(0);
            if bound < floor {
                return Err(invalid(
                    format!("bounds.{checker}"),
                    format!("bound {bound} is below the smallest index {floor}"),
                ));
            }
        }
        Ok(SweepConfig {
            a,
            b,
            c,
            inits,
            enabled,
            default_bound,
            bounds,
            format: raw.format,
            expected_witnesses: raw.expected_witnesses,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
a = [1, 2]
b = [1, 1]
c = [1, 1]
inits = ["u", "3/2,-1"]
enabled = ["cor2", "eq5", "cor2"]
"#;

    #[test]
    fn parses_and_normalizes() {
        let cfg: SweepConfig = SMALL.parse().unwrap();
        assert_eq!(cfg.enabled, vec![Checker::Eq5, Checker::Cor2]);
        assert_eq!(
            cfg.inits[1],
            Init::Pair("3/2".parse().unwrap(), (-1).into())
        );
        assert_eq!(cfg.bound(Checker::Eq5), 6);
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn shipped_grid() {
        let cfg = SweepConfig::shipped();
        assert_eq!((cfg.a, cfg.b, cfg.c), ((1, 4), (1, 4), (1, 3)));
        assert_eq!(cfg.enabled, CATALOG.to_vec());
        assert_eq!(cfg.bound(Checker::Lemma3), 8);
        assert_eq!(cfg.bound(Checker::Thm5S2), 6);
    }

    #[test]
    fn empty_enabled_list_is_rejected() {
        let text = SMALL.replace(r#"["cor2", "eq5", "cor2"]"#, "[]");
        let err = text.parse::<SweepConfig>().unwrap_err().to_string();
        assert_eq!(err, "field `enabled`: no checkers enabled");
    }

    #[test]
    fn diagnostics_name_the_field_or_line() {
        let err = SMALL
            .replace("\"eq5\"", "\"eq6\"")
            .parse::<SweepConfig>()
            .unwrap_err();
        assert!(err
            .to_string()
            .starts_with("field `enabled[1]`: unknown checker `eq6`"));
        let err = SMALL
            .replace("[1, 2]", "[2, 1]")
            .parse::<SweepConfig>()
            .unwrap_err();
        assert_eq!(err.to_string(), "field `a`: empty range [2, 1]");
        let err = format!("{SMALL}colour = 3\n")
            .parse::<SweepConfig>()
            .unwrap_err();
        assert!(err.to_string().contains("line 7"), "{err}");
        assert!(err.to_string().contains("colour"), "{err}");
        let err = SMALL
            .replace("\"u\"", "\"w\"")
            .parse::<SweepConfig>()
            .unwrap_err();
        assert!(err.to_string().starts_with("field `inits[0]`"), "{err}");
    }
}
