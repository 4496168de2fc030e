use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::verify::{ConjectureCase, Verdict};

/// Append-only JSON-lines file of violated conjecture cases.
#[derive(Clone, Debug)]
pub struct CounterexampleLog {
    path: PathBuf,
}

impl CounterexampleLog {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        CounterexampleLog { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends the violated cases among `cases`; returns how many were written.
    pub fn append<'a>(&self, cases: impl IntoIterator<Item = &'a ConjectureCase>) -> std::io::Result<usize> {
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut written = 0;
        for c in cases.into_iter().filter(|c| c.verdict == Verdict::Violated) {
            writeln!(file, "{}", c.to_json_line())?;
            written += 1;
        }
        file.flush()?;
        Ok(written)
    }

    /// Every logged case; a missing file reads as empty.
    pub fn read(&self) -> std::io::Result<Vec<ConjectureCase>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let mut out = Vec::new();
        for (k, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let case = serde_json::from_str(&line)
                .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, format!("line {}: {e}", k + 1)))?;
            out.push(case);
        }
        Ok(out)
    }
}
