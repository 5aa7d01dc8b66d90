//! Deterministic artifact writing.

use cosetnet_core::automata::io::{to_dot, to_json};
use cosetnet_core::automata::MultiTapeAutomaton;
use cosetnet_core::error::Result;
use std::fs;
use std::path::Path;

pub fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), text)?;
    Ok(())
}

pub fn write_json_value<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(dir, name, &text)
}

/// Writes `<stem>.json` and `<stem>.dot` for an automaton.
pub fn write_automaton(dir: &Path, stem: &str, a: &MultiTapeAutomaton) -> Result<()> {
    write_json_value(dir, &format!("{stem}.json"), &to_json(a))?;
    write_text(dir, &format!("{stem}.dot"), &to_dot(a, stem))
}
