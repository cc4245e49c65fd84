use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use vvol_core::{solve_minimal, ATable, Caps, MinimalTable, Result};

/// Cache file for one set of caps; the config hash is part of the name and
/// of the header.
pub fn cache_path(dir: &Path, caps: Caps) -> PathBuf {
    dir.join(format!("minimal-k{}-w{}-{}.json", caps.max_k, caps.max_weight, caps.config_hash()))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn load(path: &Path, caps: Caps) -> Option<MinimalTable> {
    let text = fs::read_to_string(path).ok()?;
    let table = ATable::from_json(&text).ok()?;
    if table.caps() != caps {
        return None;
    }
    table.to_minimal().ok()
}

/// The minimal table for `caps`, from `cache` when a valid entry exists.
/// Unreadable or mismatched entries are recomputed and replaced.
pub fn load_or_build(caps: Caps, cache: Option<&Path>) -> Result<MinimalTable> {
    let Some(dir) = cache else {
        return solve_minimal(caps.max_k, caps.max_weight);
    };
    let path = cache_path(dir, caps);
    if path.exists() {
        if let Some(t) = load(&path, caps) {
            return Ok(t);
        }
        eprintln!("warning: ignoring invalid cache entry {}", path.display());
    }
    let table = solve_minimal(caps.max_k, caps.max_weight)?;
    fs::create_dir_all(dir)?;
    write_atomic(&path, &ATable::from_minimal(&table).to_json())?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_table_matches_fresh_one() {
        let dir = tempfile::tempdir().unwrap();
        let caps = Caps { max_k: 6, max_weight: 6 };
        let first = load_or_build(caps, Some(dir.path())).unwrap();
        let path = cache_path(dir.path(), caps);
        let bytes = fs::read(&path).unwrap();
        let second = load_or_build(caps, Some(dir.path())).unwrap();
        assert_eq!(first, second);
        assert_eq!(second, solve_minimal(6, 6).unwrap());
        assert_eq!(fs::read(&path).unwrap(), bytes);
    }

    #[test]
    fn corrupt_entry_is_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let caps = Caps { max_k: 3, max_weight: 4 };
        let path = cache_path(dir.path(), caps);
        fs::write(&path, "{not json").unwrap();
        let t = load_or_build(caps, Some(dir.path())).unwrap();
        assert_eq!(t, solve_minimal(3, 4).unwrap());
        assert!(ATable::from_json(&fs::read_to_string(&path).unwrap()).is_ok());
    }
}
