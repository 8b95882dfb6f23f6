//! Declared counts loaded from a line-oriented config file.
//!
//! Grammar, one entry per line:
//!
//! ```text
//! entry <label>: count=<int> [breakdown=<term>(+<term>)*] [cite="<text>"]
//! <term> := <int> | <name>:<int>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Keys may appear in
//! any order, each at most once; unknown keys are rejected. Inside `cite`,
//! `\"` and `\\` are the only escapes.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Labels the census needs from the config.
pub mod labels {
    pub const T_MODELS: &str = "t_models";
    pub const T_SYMMETRIC: &str = "t_symmetric";
    pub const P_VERY_DEGENERATE: &str = "p_very_degenerate";
    pub const P_VERY_DEGENERATE_SYMMETRIC: &str = "p_very_degenerate_symmetric";
}

/// Config shipped with the crate.
pub const DEFAULT_CONFIG: &str = include_str!("../data/declared.cfg");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, field `{field}`: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, field: &str, message: impl Into<String>) -> Self {
        ConfigError {
            line,
            field: field.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeclaredEntry {
    pub label: String,
    pub count: u64,
    pub provenance: String,
    pub breakdown: Option<Vec<(String, u64)>>,
}

impl fmt::Display for DeclaredEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry {}: count={}", self.label, self.count)?;
        if let Some(parts) = &self.breakdown {
            let terms: Vec<String> = parts
                .iter()
                .map(|(name, n)| {
                    if name.is_empty() {
                        n.to_string()
                    } else {
                        format!("{name}:{n}")
                    }
                })
                .collect();
            write!(f, " breakdown={}", terms.join("+"))?;
        }
        if !self.provenance.is_empty() {
            write!(f, " cite=\"{}\"", escape(&self.provenance))?;
        }
        Ok(())
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Parse a quoted string starting at `rest` (which begins with `"`).
/// Returns the unescaped text and the remainder after the closing quote.
pub(crate) fn take_quoted(rest: &str) -> Option<(String, &str)> {
    let mut chars = rest.char_indices();
    if chars.next()?.1 != '"' {
        return None;
    }
    let mut out = String::new();
    while let Some((i, ch)) = chars.next() {
        match ch {
            '"' => return Some((out, &rest[i + 1..])),
            '\\' => match chars.next()?.1 {
                c @ ('"' | '\\') => out.push(c),
                _ => return None,
            },
            c => out.push(c),
        }
    }
    None
}

pub fn load_declared(config_text: &str) -> Result<Vec<DeclaredEntry>, ConfigError> {
    let mut entries: Vec<DeclaredEntry> = Vec::new();
    for (idx, raw) in config_text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let entry = parse_entry(line, line_no)?;
        if entries.iter().any(|e| e.label == entry.label) {
            return Err(ConfigError::new(line_no, "label", format!("duplicate label `{}`", entry.label)));
        }
        entries.push(entry);
    }
    Ok(entries)
}

fn parse_entry(line: &str, line_no: usize) -> Result<DeclaredEntry, ConfigError> {
    let body = line
        .strip_prefix("entry")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| ConfigError::new(line_no, "entry", "line must start with `entry`"))?;
    let (label, mut rest) = body
        .split_once(':')
        .ok_or_else(|| ConfigError::new(line_no, "label", "missing `:` after label"))?;
    let label = label.trim();
    if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.') {
        return Err(ConfigError::new(line_no, "label", format!("invalid label `{label}`")));
    }

    let mut count: Option<u64> = None;
    let mut breakdown: Option<Vec<(String, u64)>> = None;
    let mut cite: Option<String> = None;

    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let (key, after) = rest
            .split_once('=')
            .ok_or_else(|| ConfigError::new(line_no, rest.split_whitespace().next().unwrap_or(""), "expected key=value"))?;
        let key = key.trim();
        match key {
            "count" | "breakdown" => {
                let end = after.find(char::is_whitespace).unwrap_or(after.len());
                let value = &after[..end];
                rest = &after[end..];
                if key == "count" {
                    if count.is_some() {
                        return Err(ConfigError::new(line_no, key, "repeated key"));
                    }
                    count = Some(parse_count(value, line_no, key)?);
                } else {
                    if breakdown.is_some() {
                        return Err(ConfigError::new(line_no, key, "repeated key"));
                    }
                    breakdown = Some(parse_breakdown(value, line_no)?);
                }
            }
            "cite" => {
                if cite.is_some() {
                    return Err(ConfigError::new(line_no, key, "repeated key"));
                }
                let (text, remainder) = take_quoted(after)
                    .ok_or_else(|| ConfigError::new(line_no, key, "expected a double-quoted string"))?;
                cite = Some(text);
                rest = remainder;
            }
            other => {
                return Err(ConfigError::new(line_no, other, "unknown key"));
            }
        }
    }

    let count = count.ok_or_else(|| ConfigError::new(line_no, "count", "missing count"))?;
    if let Some(parts) = &breakdown {
        let sum = parts
            .iter()
            .try_fold(0u64, |acc, (_, n)| acc.checked_add(*n))
            .ok_or_else(|| ConfigError::new(line_no, "breakdown", "sum overflows"))?;
        if sum != count {
            return Err(ConfigError::new(
                line_no,
                "breakdown",
                format!("parts sum to {sum}, count is {count}"),
            ));
        }
    }
    Ok(DeclaredEntry {
        label: label.to_string(),
        count,
        provenance: cite.unwrap_or_default(),
        breakdown,
    })
}

fn parse_count(value: &str, line_no: usize, field: &str) -> Result<u64, ConfigError> {
    value
        .parse::<u64>()
        .map_err(|_| ConfigError::new(line_no, field, format!("`{value}` is not a non-negative integer")))
}

fn parse_breakdown(value: &str, line_no: usize) -> Result<Vec<(String, u64)>, ConfigError> {
    if value.is_empty() {
        return Err(ConfigError::new(line_no, "breakdown", "empty breakdown"));
    }
    value
        .split('+')
        .map(|term| match term.split_once(':') {
            Some((name, n)) if !name.is_empty() => {
                Ok((name.to_string(), parse_count(n, line_no, "breakdown")?))
            }
            Some(_) => Err(ConfigError::new(line_no, "breakdown", format!("bad term `{term}`"))),
            None => Ok((String::new(), parse_count(term, line_no, "breakdown")?)),
        })
        .collect()
}

/// The declared inputs the census consumes, looked up by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeclaredCensus {
    pub entries: Vec<DeclaredEntry>,
    pub t_models: u64,
    pub t_symmetric: u64,
    pub p_very_degenerate: u64,
    pub p_very_degenerate_symmetric: u64,
}

impl DeclaredCensus {
    pub fn from_entries(entries: Vec<DeclaredEntry>) -> Result<Self, ConfigError> {
        let get = |label: &str| {
            entries
                .iter()
                .find(|e| e.label == label)
                .map(|e| e.count)
                .ok_or_else(|| ConfigError::new(0, label, "required entry missing"))
        };
        let census = DeclaredCensus {
            t_models: get(labels::T_MODELS)?,
            t_symmetric: get(labels::T_SYMMETRIC)?,
            p_very_degenerate: get(labels::P_VERY_DEGENERATE)?,
            p_very_degenerate_symmetric: get(labels::P_VERY_DEGENERATE_SYMMETRIC)?,
            entries,
        };
        if census.t_symmetric > census.t_models {
            return Err(ConfigError::new(0, labels::T_SYMMETRIC, "exceeds t_models"));
        }
        if census.p_very_degenerate_symmetric > census.p_very_degenerate {
            return Err(ConfigError::new(
                0,
                labels::P_VERY_DEGENERATE_SYMMETRIC,
                "exceeds p_very_degenerate",
            ));
        }
        Ok(census)
    }

    pub fn parse(config_text: &str) -> Result<Self, ConfigError> {
        Self::from_entries(load_declared(config_text)?)
    }

    pub fn shipped() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("shipped config is valid")
    }

    pub fn entry(&self, label: &str) -> Option<&DeclaredEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

/// Closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RangeCase {
    lo: i64,
    hi: i64,
}

impl RangeCase {
    pub fn new(lo: i64, hi: i64) -> Option<Self> {
        (lo <= hi).then_some(RangeCase { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }
}

pub fn interval_case_count(r: RangeCase) -> i64 {
    r.hi - r.lo + 1
}

/// Sub-cases contributed by the flop ranges `{0..=r1_max}` and `{0..=r2_max}`.
/// Any bound below `-1` is treated as `-1`, the empty range.
pub fn t_flop_case_count(r1_max: i64, r2_max: i64) -> i64 {
    (r1_max.max(-1) + 1) + (r2_max.max(-1) + 1)
}
