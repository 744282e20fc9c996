//! Flat key-value state files:
//!
//! ```text
//! # Werner state, p = 0.8
//! a = 0.05
//! b = 0.45
//! c = 0.45
//! d = 0.05
//! z = -0.4
//! ```
//!
//! `key: value` is accepted too. Every key must appear exactly once.

use std::path::Path;

use xdecay::XState;

use crate::CliError;

pub fn parse_state(text: &str) -> Result<XState, CliError> {
    let mut values: [Option<f64>; 5] = [None; 5];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .or_else(|| line.split_once(':'))
            .ok_or_else(|| {
                CliError::Input(format!("line {}: expected `key = value`", lineno + 1))
            })?;
        let key = key.trim();
        let slot = match key {
            "a" => 0,
            "b" => 1,
            "c" => 2,
            "d" => 3,
            "z" => 4,
            other => {
                return Err(CliError::Input(format!(
                    "line {}: unknown key `{other}`",
                    lineno + 1
                )))
            }
        };
        if values[slot].is_some() {
            return Err(CliError::Input(format!(
                "line {}: duplicate key `{key}`",
                lineno + 1
            )));
        }
        let v: f64 = value.trim().parse().map_err(|_| {
            CliError::Input(format!(
                "line {}: `{}` is not a decimal number",
                lineno + 1,
                value.trim()
            ))
        })?;
        values[slot] = Some(v);
    }
    let mut out = [0.0; 5];
    for (i, (slot, name)) in values.iter().zip(["a", "b", "c", "d", "z"]).enumerate() {
        out[i] = slot.ok_or_else(|| CliError::Input(format!("missing key `{name}`")))?;
    }
    let [a, b, c, d, z] = out;
    Ok(XState::new(a, b, c, d, z)?)
}

pub fn read_state(path: &Path) -> Result<XState, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text)
}
