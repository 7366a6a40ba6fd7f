//! Universe files: a JSON array of `{id, degree, dual, pole?, trivial?}`.

use std::path::Path;

use linper_core::{LineSet, LineSpec, PoleType};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineEntry {
    pub id: String,
    pub degree: u32,
    pub dual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole: Option<Pole>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trivial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pole {
    Symmetric,
    Exterior,
}

impl From<Pole> for PoleType {
    fn from(p: Pole) -> Self {
        match p {
            Pole::Symmetric => PoleType::Symmetric,
            Pole::Exterior => PoleType::Exterior,
        }
    }
}

impl From<PoleType> for Pole {
    fn from(p: PoleType) -> Self {
        match p {
            PoleType::Symmetric => Pole::Symmetric,
            PoleType::Exterior => Pole::Exterior,
        }
    }
}

pub fn from_entries(entries: &[LineEntry]) -> Result<LineSet, CliError> {
    let specs = entries
        .iter()
        .map(|e| {
            let s = LineSpec::new(&e.id, e.degree, &e.dual, e.pole.map(Into::into));
            if e.trivial {
                s.trivial()
            } else {
                s
            }
        })
        .collect();
    Ok(LineSet::new(specs)?)
}

pub fn to_entries(lines: &LineSet) -> Vec<LineEntry> {
    lines
        .specs()
        .into_iter()
        .map(|s| LineEntry { id: s.id, degree: s.degree, dual: s.dual, pole: s.pole.map(Into::into), trivial: s.trivial })
        .collect()
}

pub fn parse_str(text: &str) -> Result<LineSet, CliError> {
    let entries: Vec<LineEntry> = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    from_entries(&entries)
}

pub fn load(path: &Path) -> Result<LineSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

/// The trivial line, a self-dual line of degree two with the exterior
/// square pole, and a pair of dual characters.
pub fn builtin() -> LineSet {
    LineSet::new(vec![
        LineSpec::new("triv", 1, "triv", Some(PoleType::Symmetric)).trivial(),
        LineSpec::new("rho2", 2, "rho2", Some(PoleType::Exterior)),
        LineSpec::new("chi", 1, "chibar", None),
        LineSpec::new("chibar", 1, "chi", None),
    ])
    .expect("builtin universe is valid")
}

/// `--universe` wins over `LINPER_UNIVERSE`; with neither, the builtin.
pub fn resolve(flag: Option<&Path>, env: Option<&str>) -> Result<LineSet, CliError> {
    match (flag, env) {
        (Some(p), _) => load(p),
        (None, Some(p)) if !p.is_empty() => load(Path::new(p)),
        _ => Ok(builtin()),
    }
}
