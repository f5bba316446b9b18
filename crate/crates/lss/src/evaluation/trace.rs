//! Trace files: one item token per line, UTF-8, empty lines skipped.
//!
//! Tokens are arbitrary strings; the interner maps them to dense ids in
//! first-seen order. Reading a written trace therefore reproduces the same
//! arrival pattern even though the numeric ids may differ.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::item::{ItemId, ItemInterner};

pub fn read_trace(path: &Path, interner: &mut ItemInterner) -> Result<Vec<ItemId>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut stream = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        if token.chars().any(|c| c.is_control()) {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line: idx + 1,
                msg: "token contains control characters".into(),
            });
        }
        stream.push(interner.intern(token));
    }
    if stream.is_empty() {
        return Err(Error::Parse {
            path: path.display().to_string(),
            line: 1,
            msg: "empty trace".into(),
        });
    }
    Ok(stream)
}

/// Writes ids as decimal tokens, one per line.
pub fn write_trace(path: &Path, stream: &[ItemId]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for item in stream {
        writeln!(w, "{}", item.0).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
