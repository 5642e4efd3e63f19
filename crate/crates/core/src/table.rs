//! Named PD codes from a CSV file with `name,pd` columns.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::diagram::{parse_pd, Diagram};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub name: String,
    pub line: u64,
    pub diagram: Diagram,
}

#[derive(Clone, Debug)]
pub struct SkippedRow {
    pub line: u64,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct KnotTable {
    pub source: PathBuf,
    pub entries: Vec<TableEntry>,
    pub skipped: Vec<SkippedRow>,
    index: HashMap<String, usize>,
}

#[derive(Deserialize)]
struct Row {
    name: String,
    pd: String,
}

impl KnotTable {
    pub fn get(&self, name: &str) -> Result<&TableEntry> {
        self.index
            .get(name)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter()
    }
}

/// Loads a table. Rows whose PD code does not parse are skipped with a
/// warning; a repeated name or a table without valid rows is an error.
pub fn load_knot_table(path: &Path) -> Result<KnotTable> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut lines: HashMap<String, u64> = HashMap::new();

    let headers = reader.headers()?.clone();
    for record in reader.records() {
        let parsed = record.and_then(|r| {
            let line = r.position().map_or(0, |p| p.line());
            r.deserialize::<Row>(Some(&headers)).map(|row| (line, row))
        });
        let (line, row) = match parsed {
            Ok(x) => x,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                log::warn!("{}:{}: skipping unreadable row: {}", path.display(), line, e);
                skipped.push(SkippedRow {
                    line,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        let name = row.name.trim().to_string();
        if let Some(&first) = lines.get(&name) {
            return Err(Error::DuplicateName {
                name,
                first,
                second: line,
            });
        }
        match parse_pd(&row.pd) {
            Ok(diagram) => {
                lines.insert(name.clone(), line);
                index.insert(name.clone(), entries.len());
                entries.push(TableEntry { name, line, diagram });
            }
            Err(e) => {
                log::warn!("{}:{}: skipping {}: {}", path.display(), line, name, e);
                skipped.push(SkippedRow {
                    line,
                    reason: format!("{name}: {e}"),
                });
            }
        }
    }
    if entries.is_empty() {
        return Err(Error::EmptyTable(path.display().to_string()));
    }
    Ok(KnotTable {
        source: path.to_path_buf(),
        entries,
        skipped,
        index,
    })
}
