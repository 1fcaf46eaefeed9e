use std::path::{Path, PathBuf};

use frcalc_core::linalg::Tolerance;
use serde::Deserialize;

use crate::report::{CliError, CliResult};

pub const DEFAULT_FILE: &str = "frcalc.toml";
pub const ENV_VAR: &str = "FRCALC_CONFIG";
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    abs_eps: Option<f64>,
    rank_cutoff: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub tol: Tolerance,
    pub seed: u64,
}

/// Flag values that take precedence over the file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub abs_eps: Option<f64>,
    pub rank_cutoff: Option<f64>,
    pub seed: Option<u64>,
}

/// Reads `--config`, else `$FRCALC_CONFIG`, else `./frcalc.toml` if present.
/// A path named explicitly must exist.
pub fn load(explicit: Option<&Path>, ov: &Overrides) -> CliResult<Settings> {
    let named: Option<PathBuf> = explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from));
    let file = match named {
        Some(p) => parse_file(&p)?,
        None if Path::new(DEFAULT_FILE).is_file() => parse_file(Path::new(DEFAULT_FILE))?,
        None => FileConfig::default(),
    };
    let d = Tolerance::default();
    let tol = Tolerance::new(
        ov.abs_eps.or(file.abs_eps).unwrap_or(d.abs_eps),
        ov.rank_cutoff.or(file.rank_cutoff).unwrap_or(d.rank_cutoff),
    )?;
    Ok(Settings { tol, seed: ov.seed.or(file.seed).unwrap_or(DEFAULT_SEED) })
}

fn parse_file(p: &Path) -> CliResult<FileConfig> {
    let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))
}
