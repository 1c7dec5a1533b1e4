use std::fs;
use std::path::Path;

use mcg_finite::covers::{CoverError, PermutationCover};
use mcg_finite::instances::{
    augmentation_torus, block_unipotent_torus, mcg_finite_family, s3_genus2, s3_torus, s4_torus,
    s4_twice_punctured_torus, swapped_characters,
};
use mcg_finite::json::{cover_from_json, rep_from_json, JsonError};
use mcg_finite::{CycRep, SurfaceSig};
use serde_json::Value;
use thiserror::Error;

use crate::args::RepSource;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: exit status 2.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input violating a precondition: exit status 3.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot write report: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Output(_) => 1,
        }
    }

    pub fn pre(e: impl std::fmt::Display) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Syntax(_) | JsonError::Shape { .. } => CliError::Parse(e.to_string()),
            JsonError::Rep(_) | JsonError::Cover(_) => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        CliError::pre(e)
    }
}

pub fn slug(name: &str) -> String {
    name.chars()
        .filter_map(|c| match c {
            'a'..='z' | '0'..='9' => Some(c),
            'A'..='Z' => Some(c.to_ascii_lowercase()),
            ' ' | '=' | ',' | '^' => Some('-'),
            _ => None,
        })
        .collect::<String>()
        .split('-')
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("-")
}

/// Shipped representations keyed by slug.
pub fn instances() -> Vec<(String, CycRep)> {
    let mut out: Vec<(String, CycRep)> = vec![
        ("s3-torus".into(), s3_torus()),
        ("s4-torus".into(), s4_torus()),
        ("s3-genus2".into(), s3_genus2()),
        ("s4-twice-punctured-torus".into(), s4_twice_punctured_torus()),
        ("augmentation".into(), augmentation_torus()),
        ("swapped-characters".into(), swapped_characters()),
        ("block-unipotent".into(), block_unipotent_torus()),
    ];
    for (name, rho) in mcg_finite_family() {
        let s = slug(name);
        if !out.iter().any(|(n, _)| *n == s) {
            out.push((s, rho));
        }
    }
    out
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

impl RepSource {
    pub fn is_given(&self) -> bool {
        self.rep_file.is_some() || self.rep_json.is_some() || self.instance.is_some()
    }

    pub fn load(&self) -> Result<CycRep, CliError> {
        if let Some(path) = &self.rep_file {
            return Ok(rep_from_json(&read_json(path)?)?);
        }
        if let Some(text) = &self.rep_json {
            let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
            return Ok(rep_from_json(&v)?);
        }
        if let Some(name) = &self.instance {
            return instances()
                .into_iter()
                .find(|(n, _)| n == name)
                .map(|(_, r)| r)
                .ok_or_else(|| CliError::Parse(format!("unknown instance `{name}`")));
        }
        Err(CliError::Parse("no representation given (use --rep, --rep-json or --instance)".into()))
    }
}

pub fn load_cover(path: &Path, base: Option<SurfaceSig>) -> Result<PermutationCover, CliError> {
    Ok(cover_from_json(&read_json(path)?, base)?)
}

/// `g,n,b`, `g,n` or JSON `{"genus":..}`.
pub fn parse_surface(s: &str) -> Result<SurfaceSig, CliError> {
    if s.trim_start().starts_with('{') {
        return serde_json::from_str(s).map_err(|e| CliError::Parse(e.to_string()));
    }
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Parse(format!("surface `{s}`: {e}")))?;
    match parts[..] {
        [g, n] => Ok(SurfaceSig::new(g, n, 0)),
        [g, n, b] => Ok(SurfaceSig::new(g, n, b)),
        _ => Err(CliError::Parse(format!("surface `{s}` should be g,n,b"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs() {
        assert_eq!(slug("rank1 (z4, z6)"), "rank1-z4-z6");
        assert_eq!(slug("augmentation k=2 n=3"), "augmentation-k-2-n-3");
    }

    #[test]
    fn surfaces() {
        assert_eq!(parse_surface("1,1,0").unwrap(), SurfaceSig::new(1, 1, 0));
        assert_eq!(parse_surface("2,0").unwrap(), SurfaceSig::closed(2));
        assert!(matches!(parse_surface("x"), Err(CliError::Parse(_))));
    }

    #[test]
    fn instance_names_unique() {
        let names: Vec<String> = instances().into_iter().map(|(n, _)| n).collect();
        let set: std::collections::HashSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
    }
}
