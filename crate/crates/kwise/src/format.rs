//! Profile files.
//!
//! The native format is line based. `#` starts a comment line. The first
//! remaining line is `m n`; every later line is `count: i1,i2,...,im` with
//! 1-based candidate indices, most preferred first:
//!
//! ```text
//! # three candidates, one hundred voters
//! 3 100
//! 49: 1,2,3
//! 48: 3,2,1
//! 3: 2,3,1
//! ```
//!
//! PrefLib `.soc` files use the same ranking lines; their `#` metadata lines
//! are skipped apart from `# NUMBER ALTERNATIVES`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use kwise_core::{Profile, Ranking};
use thiserror::Error;

use crate::error::AppError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a 1-based comma separated permutation such as `2,3,1`.
pub fn parse_ranking(spec: &str, m: usize) -> Result<Ranking, ParseError> {
    parse_order(spec, 0, Some(m))
}

fn parse_order(spec: &str, line: usize, m: Option<usize>) -> Result<Ranking, ParseError> {
    let ids: Vec<usize> = spec
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(0) | Err(_) => Err(err(line, format!("`{t}` is not a candidate index (indices start at 1)"))),
                Ok(i) => Ok(i - 1),
            }
        })
        .collect::<Result<_, _>>()?;
    if let Some(m) = m {
        if ids.len() != m {
            return Err(err(line, format!("ranking lists {} candidates, expected {m}", ids.len())));
        }
    }
    Ranking::from_order(&ids).map_err(|e| match e {
        kwise_core::Error::NotAPermutation => err(line, format!("`{spec}` is not a permutation of 1..{}", ids.len())),
        other => err(line, other.to_string()),
    })
}

fn parse_group(body: &str, line: usize, m: Option<usize>) -> Result<(Ranking, u64), ParseError> {
    let (count, order) = body.split_once(':').ok_or_else(|| err(line, "expected `count: i1,i2,...`"))?;
    let count: u64 = count.trim().parse().map_err(|_| err(line, format!("`{}` is not a voter count", count.trim())))?;
    if count == 0 {
        return Err(err(line, "voter count must be positive"));
    }
    Ok((parse_order(order, line, m)?, count))
}

fn build(m: usize, groups: Vec<(Ranking, u64)>, line: usize) -> Result<Profile, ParseError> {
    Profile::from_groups(m, groups).map_err(|e| err(line, e.to_string()))
}

/// Parses the native profile format.
pub fn parse_profile(text: &str) -> Result<Profile, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(0, "missing `m n` header"))?;
    let mut fields = header.split_whitespace();
    let (Some(m), Some(n), None) = (fields.next(), fields.next(), fields.next()) else {
        return Err(err(hline, "expected header `m n`"));
    };
    let m: usize = m.parse().map_err(|_| err(hline, format!("`{m}` is not a candidate count")))?;
    let n: u64 = n.parse().map_err(|_| err(hline, format!("`{n}` is not a voter count")))?;
    if m == 0 {
        return Err(err(hline, "at least one candidate is required"));
    }
    let mut groups = Vec::new();
    let mut total = 0u64;
    let mut last = hline;
    for (line, body) in lines {
        let g = parse_group(body, line, Some(m))?;
        total = total.checked_add(g.1).ok_or_else(|| err(line, "voter count overflows"))?;
        groups.push(g);
        last = line;
    }
    if groups.is_empty() {
        return Err(err(hline, "profile has no rankings"));
    }
    if total != n {
        return Err(err(hline, format!("header announces {n} voters but the rankings hold {total}")));
    }
    build(m, groups, last)
}

/// Parses a PrefLib strict-order (`.soc`) file.
pub fn parse_soc(text: &str) -> Result<Profile, ParseError> {
    let mut declared: Option<usize> = None;
    for (i, l) in text.lines().enumerate() {
        if let Some(rest) = l.trim().strip_prefix('#') {
            if let Some((key, value)) = rest.split_once(':') {
                if key.trim().eq_ignore_ascii_case("NUMBER ALTERNATIVES") {
                    let v = value.trim();
                    declared = Some(v.parse().map_err(|_| err(i + 1, format!("`{v}` is not a candidate count")))?);
                }
            }
        }
    }
    let mut m = declared;
    let mut groups = Vec::new();
    let mut last = 0;
    for (line, body) in content_lines(text) {
        let g = parse_group(body, line, m)?;
        m.get_or_insert(g.0.len());
        groups.push(g);
        last = line;
    }
    let m = m.ok_or_else(|| err(0, "file holds no rankings"))?;
    build(m, groups, last)
}

/// Writes the native format; `parse_profile` reads it back unchanged.
pub fn serialize_profile(profile: &Profile) -> String {
    let mut out = format!("{} {}\n", profile.m(), profile.n());
    for g in profile.groups() {
        let ids: Vec<String> = g.ranking.iter().map(|c| (c.0 + 1).to_string()).collect();
        writeln!(out, "{}: {}", g.count, ids.join(",")).expect("writing to a String");
    }
    out
}

/// 1-based candidate list of a ranking.
pub fn one_based(r: &Ranking) -> Vec<usize> {
    r.iter().map(|c| c.0 + 1).collect()
}

/// Reads a profile, choosing the parser by extension (`.soc` or native).
pub fn read_profile(path: &Path) -> Result<Profile, AppError> {
    let text = fs::read_to_string(path).map_err(|source| AppError::Io { path: path.to_owned(), source })?;
    let parsed = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("soc") => parse_soc(&text),
        _ => parse_profile(&text),
    };
    parsed.map_err(|source| AppError::Parse { path: path.to_owned(), source })
}
