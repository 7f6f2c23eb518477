//! Plain-text character-table cache.
//!
//! One character value per line, `<lambda> <rho> <value>`, partitions in the
//! bracket form, e.g. `[2,1] [3] -1`. Lines starting with `#` and blank lines
//! are ignored. A file may hold tables for several n; a table is used only
//! when every (λ, ρ) pair for that n is present.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};

const HEADER: &str = "# lexrank character cache v1: <lambda> <rho> <value>";

fn read_entries(path: &Path) -> Result<HashMap<(Partition, Partition), i128>> {
    let mut entries = HashMap::new();
    if !path.exists() {
        return Ok(entries);
    }
    let reader = BufReader::new(File::open(path)?);
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |why: &str| Error::Cache(format!("{}:{}: {why}", path.display(), lineno + 1));
        let mut fields = line.split_whitespace();
        let (Some(l), Some(r), Some(v), None) = (fields.next(), fields.next(), fields.next(), fields.next()) else {
            return Err(bad("expected three fields"));
        };
        let lam: Partition = l.parse().map_err(|_| bad("bad lambda"))?;
        let rho: Partition = r.parse().map_err(|_| bad("bad rho"))?;
        let value: i128 = v.parse().map_err(|_| bad("bad value"))?;
        if lam.size() != rho.size() {
            return Err(bad("lambda and rho differ in size"));
        }
        entries.insert((lam, rho), value);
    }
    Ok(entries)
}

/// Loads the table for S_n if the file holds all of it.
pub fn load_table(path: &Path, n: usize) -> Result<Option<CharacterTable>> {
    let entries = read_entries(path)?;
    let parts = enumerate_partitions(n, None);
    let mut values = Vec::with_capacity(parts.len());
    for lam in &parts {
        let mut row = Vec::with_capacity(parts.len());
        for rho in &parts {
            match entries.get(&(lam.clone(), rho.clone())) {
                Some(v) => row.push(*v),
                None => return Ok(None),
            }
        }
        values.push(row);
    }
    Ok(Some(CharacterTable::from_values(n, values)))
}

/// Appends every value of `table` not already in the file.
pub fn store_table(path: &Path, table: &CharacterTable) -> Result<()> {
    let existing = read_entries(path)?;
    let fresh = !path.exists() || std::fs::metadata(path)?.len() == 0;
    let mut out = BufWriter::new(OpenOptions::new().create(true).append(true).open(path)?);
    if fresh {
        writeln!(out, "{HEADER}")?;
    }
    for (i, lam) in table.partitions().iter().enumerate() {
        for (j, class) in table.classes().iter().enumerate() {
            let key = (lam.clone(), class.cycle_type.clone());
            if !existing.contains_key(&key) {
                writeln!(out, "{} {} {}", lam, class.cycle_type, table.row(i)[j])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
