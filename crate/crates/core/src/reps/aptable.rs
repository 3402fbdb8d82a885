//! The `ap-table v1` eigenvalue file format.
//!
//! ```text
//! #ap-table v1 weight=12 level=1 label=Delta
//! 2,-24
//! 3,252
//! 5,4830
//! ```
//!
//! Lines after the header are `p,a_p` with `p` running through every prime
//! in ascending order; the last prime is the table's cutoff.

use crate::error::{Error, Result};
use crate::fields::segmented_primes;

use super::HoloNewform;

const MAGIC: &str = "#ap-table v1";

fn data_err<T>(line: usize, msg: impl std::fmt::Display) -> Result<T> {
    Err(Error::Data(format!("ap-table line {line}: {msg}")))
}

/// Parses an `ap-table v1` document.
pub fn parse(text: &str) -> Result<HoloNewform> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Data("ap-table is empty".into()))?;
    let rest = header
        .strip_prefix(MAGIC)
        .ok_or_else(|| Error::Data(format!("ap-table header must start with `{MAGIC}`")))?;
    let (weight, level, label) = parse_header(rest.trim())?;

    let mut entries: Vec<(usize, u64, i128)> = Vec::new();
    for (i, raw) in lines {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let Some((p, a)) = line.split_once(',') else {
            return data_err(lineno, format!("expected `p,a_p`, got `{line}`"));
        };
        let p: u64 = match p.trim().parse() {
            Ok(p) => p,
            Err(_) => return data_err(lineno, format!("bad prime `{}`", p.trim())),
        };
        let a: i128 = match a.trim().parse() {
            Ok(a) => a,
            Err(_) => return data_err(lineno, format!("bad eigenvalue `{}`", a.trim())),
        };
        if let Some(&(_, prev, _)) = entries.last() {
            if p == prev {
                return data_err(lineno, format!("duplicate entry for p = {p}"));
            }
            if p < prev {
                return data_err(lineno, format!("p = {p} out of order (after {prev})"));
            }
        }
        entries.push((lineno, p, a));
    }

    let cutoff = entries.last().map_or(1, |&(_, p, _)| p);
    let primes = segmented_primes(2, cutoff);
    if primes.len() != entries.len() || primes.iter().zip(&entries).any(|(q, e)| *q != e.1) {
        let (lineno, p) = primes
            .iter()
            .zip(&entries)
            .find(|(q, e)| **q != e.1)
            .map(|(q, e)| (e.0, *q))
            .unwrap_or((entries.len() + 1, 0));
        return data_err(lineno, format!("table has a gap or non-prime entry (expected p = {p})"));
    }

    HoloNewform::new(
        weight,
        level,
        label,
        entries.into_iter().map(|(_, p, a)| (p, a)).collect(),
    )
}

fn parse_header(rest: &str) -> Result<(u32, u64, String)> {
    let mut weight = None;
    let mut level = None;
    let mut label = None;
    let mut remaining = rest;
    while !remaining.is_empty() {
        let (key, after) = remaining
            .split_once('=')
            .ok_or_else(|| Error::Data(format!("malformed header field `{remaining}`")))?;
        if key.trim() == "label" {
            label = Some(after.trim().to_string());
            break;
        }
        let (value, next) = after.split_once(' ').unwrap_or((after, ""));
        match key.trim() {
            "weight" => weight = value.parse().ok(),
            "level" => level = value.parse().ok(),
            other => return Err(Error::Data(format!("unknown header field `{other}`"))),
        }
        remaining = next.trim_start();
    }
    match (weight, level, label) {
        (Some(w), Some(l), Some(lab)) => Ok((w, l, lab)),
        _ => Err(Error::Data(
            "header needs weight=<k> level=<N> label=<text>".into(),
        )),
    }
}

/// Serializes a newform table as `ap-table v1`.
pub fn write(form: &HoloNewform) -> String {
    let mut out = format!(
        "{MAGIC} weight={} level={} label={}\n",
        form.weight(),
        form.level(),
        form.label()
    );
    for (p, a) in form.ap_table() {
        out.push_str(&format!("{p},{a}\n"));
    }
    out
}
