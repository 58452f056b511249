//! Append-only JSONL journal of count results.
//!
//! One record per line: `{"m":…, "n":…, "quantity":…, "method":…,
//! "value":"<decimal>", "timestamp":…}`. Values are decimal strings so that
//! arbitrarily large counts survive JSON round trips.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

pub const JOURNAL_FILE: &str = "counts.jsonl";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JournalRecord {
    pub m: usize,
    pub n: usize,
    pub quantity: String,
    pub method: String,
    pub value: String,
    pub timestamp: u64,
}

pub fn journal_path(dir: &Path) -> PathBuf {
    dir.join(JOURNAL_FILE)
}

/// All parseable records, in file order. Unparseable lines are returned as
/// errors so that a corrupted journal is noticed rather than skipped.
pub fn read_all(dir: &Path) -> io::Result<Vec<Result<JournalRecord, String>>> {
    let path = journal_path(dir);
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path)?;
    Ok(text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| serde_json::from_str::<JournalRecord>(line).map_err(|e| format!("{e}: {line}")))
        .collect())
}

/// Most recent record for the given size and quantity.
pub fn lookup(dir: &Path, m: usize, n: usize, quantity: &str) -> io::Result<Option<JournalRecord>> {
    Ok(read_all(dir)?
        .into_iter()
        .flatten().rfind(|r| r.m == m && r.n == n && r.quantity == quantity))
}

pub fn append(dir: &Path, record: &JournalRecord) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(journal_path(dir))?;
    writeln!(file, "{}", serde_json::to_string(record).expect("serializable record"))
}

pub fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
