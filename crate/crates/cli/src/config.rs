//! Text specs for bodies and compacts:
//!
//! ```text
//! lq q=2 d=2
//! polytope d=2 verts=[[0,0],[1,0],[0,1]]
//! ball radius=1.5
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use pextremal::reinhardt::TorusProfile;
use pextremal::{ConvexBody, Exponent, ReinhardtCompact};

use crate::CliError;

/// Splits `kind key=value ...` into its kind and a key map. Values may
/// contain spaces inside brackets.
fn tokenize(text: &str) -> Result<(String, BTreeMap<String, String>), CliError> {
    let text = text.trim();
    let (kind, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    if kind.is_empty() {
        return Err(CliError::Config("empty spec".into()));
    }
    let mut map = BTreeMap::new();
    let mut chars = rest.trim().chars().peekable();
    while chars.peek().is_some() {
        let key: String = chars.by_ref().take_while(|&c| c != '=').collect();
        let key = key.trim().to_string();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(CliError::Config(format!("malformed token near {key:?}")));
        }
        let mut value = String::new();
        let mut depth = 0i32;
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() && depth == 0 {
                break;
            }
            depth += match c {
                '[' => 1,
                ']' => -1,
                _ => 0,
            };
            value.push(c);
            chars.next();
        }
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        if value.is_empty() || depth != 0 {
            return Err(CliError::Config(format!("bad value for {key}")));
        }
        if map.insert(key.clone(), value).is_some() {
            return Err(CliError::Config(format!("duplicate key {key}")));
        }
    }
    Ok((kind.to_string(), map))
}

fn reject_unknown(kind: &str, map: &BTreeMap<String, String>, allowed: &[&str]) -> Result<(), CliError> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(CliError::Config(format!("unknown key {k:?} for {kind}"))),
        None => Ok(()),
    }
}

fn required<'a>(kind: &str, map: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str, CliError> {
    map.get(key)
        .map(String::as_str)
        .ok_or_else(|| CliError::Config(format!("{kind} needs {key}=")))
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Config(format!("cannot parse {key}={value}")))
}

pub fn parse_body(text: &str) -> Result<ConvexBody, CliError> {
    let (kind, map) = tokenize(text)?;
    match kind.as_str() {
        "lq" => {
            reject_unknown(&kind, &map, &["q", "d"])?;
            let q: Exponent = required(&kind, &map, "q")?.parse()?;
            let d = map.get("d").map(|d| number::<usize>("d", d)).transpose()?.unwrap_or(2);
            Ok(ConvexBody::lq(q, d)?)
        }
        "polytope" => {
            reject_unknown(&kind, &map, &["d", "verts"])?;
            let d: usize = number("d", required(&kind, &map, "d")?)?;
            let verts: Vec<Vec<f64>> = serde_json::from_str(required(&kind, &map, "verts")?)
                .map_err(|e| CliError::Config(format!("verts: {e}")))?;
            if let Some(v) = verts.iter().find(|v| v.len() != d) {
                return Err(CliError::Config(format!("vertex {v:?} does not have {d} coordinates")));
            }
            Ok(ConvexBody::polytope(verts)?)
        }
        other => Err(CliError::Config(format!("unknown body kind {other:?}"))),
    }
}

pub fn parse_set(text: &str) -> Result<ReinhardtCompact, CliError> {
    let (kind, map) = tokenize(text)?;
    match kind.as_str() {
        "ball" => {
            reject_unknown(&kind, &map, &["radius"])?;
            Ok(ReinhardtCompact::ball(number("radius", required(&kind, &map, "radius")?)?)?)
        }
        other => Err(CliError::Config(format!("unknown set kind {other:?}"))),
    }
}

pub fn read_body(path: &Path) -> Result<ConvexBody, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let spec: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    parse_body(&spec.join(" "))
}

pub fn read_profile(path: &Path) -> Result<ReinhardtCompact, CliError> {
    let file = fs::File::open(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(ReinhardtCompact::TorusProfile(TorusProfile::from_csv(file)?))
}
