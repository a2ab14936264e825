//! On-disk formats. Every writer produces the same bytes for the same
//! input, so artifacts can be compared by digest.

pub mod edgelist;
pub mod params;
pub mod tsv;

use std::path::Path;

use crate::error::{CliError, Result};

/// Writes via a sibling temporary file and a rename, creating parent
/// directories as needed.
pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}
