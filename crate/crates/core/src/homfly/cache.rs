//! On-disk memo cache: one `hex(canonical code) TAB json` record per line.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::diagram::CanonicalCode;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly2;

/// Reads a cache file; a missing file is an empty cache.
pub fn read_cache_file(path: &Path) -> Result<Vec<(CanonicalCode, LaurentPoly2)>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Parse {
            position: lineno + 1,
            message: format!("malformed cache record in {}", path.display()),
        };
        let (code, json) = line.split_once('\t').ok_or_else(bad)?;
        let code = CanonicalCode::from_hex(code).ok_or_else(bad)?;
        out.push((code, LaurentPoly2::from_json(json)?));
    }
    Ok(out)
}

pub fn write_cache_records(path: &Path, records: &[(CanonicalCode, LaurentPoly2)]) -> Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = BufWriter::new(file);
    for (code, poly) in records {
        writeln!(w, "{}\t{}", code.to_hex(), poly.to_json())?;
    }
    w.flush()?;
    Ok(())
}
