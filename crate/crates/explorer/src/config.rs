//! Option resolution: command-line flags, then the `--config` file, then
//! built-in defaults.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use crate::args::{Format, SuiteName};

/// Every key is optional; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub suite: Option<SuiteName>,
    pub random: Option<usize>,
    pub n: Option<usize>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub primes: Option<Vec<u64>>,
    pub m: Option<u64>,
    pub ms: Option<Vec<u64>>,
    pub i_max: Option<usize>,
    pub c_max: Option<usize>,
    pub m_range: Option<String>,
    pub diag_range: Option<String>,
    pub cap: Option<u64>,
    pub max_exhaustive_n: Option<usize>,
    pub report: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<ConfigFile> {
        let Some(path) = path else {
            return Ok(ConfigFile::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// `flag`, else `file`, else `default`.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Parses `lo:hi` with `lo <= hi`.
pub fn parse_range(text: &str) -> Result<(u64, u64)> {
    let Some((lo, hi)) = text.split_once(':') else {
        bail!("range {text:?} is not of the form lo:hi");
    };
    let lo: u64 = lo.trim().parse().with_context(|| format!("range {text:?}"))?;
    let hi: u64 = hi.trim().parse().with_context(|| format!("range {text:?}"))?;
    if lo > hi {
        bail!("range {text:?} is empty");
    }
    Ok((lo, hi))
}
