//! Output assembly: deterministic tables, atomic file writes, oracle
//! provenance, and the ordered parallel map used for independent sub-tasks.
//!
//! Determinism contract: identical computation config → byte-identical file
//! contents, regardless of thread count or output directory.  Nothing here
//! may write timestamps, absolute paths, or iteration-order-dependent data
//! into a file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::OutputFormat;
use crate::CliError;

/// One numeric table plus the metadata every output file must embed.
pub struct TableDoc {
    pub config_hash: String,
    pub oracle_provenance: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl TableDoc {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# config_hash: {}\n", self.config_hash));
        for p in &self.oracle_provenance {
            s.push_str(&format!("# oracle_provenance: {p}\n"));
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn json(&self) -> String {
        let doc = serde_json::json!({
            "config_hash": self.config_hash,
            "oracle_provenance": self.oracle_provenance,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}

/// JSON report wrapper carrying the same metadata as a table.
pub fn json_report<T: Serialize>(
    config_hash: &str,
    oracle_provenance: &[String],
    body_key: &str,
    body: &T,
) -> String {
    let doc = serde_json::json!({
        "config_hash": config_hash,
        "oracle_provenance": oracle_provenance,
        body_key: serde_json::to_value(body).expect("report serializes"),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// Writes via a temp file in the same directory plus an atomic rename, so a
/// failure never leaves a partial file at the final path.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Io(format!("no file name in {}", path.display())))?;
    let tmp = path.with_file_name(format!("{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::Io(format!("cannot move output into {}: {e}", path.display()))
    })
}

/// Writes `stem.<ext>` into `dir` (created if needed) and reports the path.
pub fn emit(dir: &Path, stem: &str, ext: &str, text: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(format!("{stem}.{ext}"));
    write_atomic(&path, text)?;
    println!("wrote {}", path.display());
    Ok(path)
}

/// Frozen-reference directory: explicit flag, else `./data/golden` when the
/// current directory is a checkout, else the build-tree copy.
pub fn resolve_golden_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    let local = Path::new("data/golden");
    if local.is_dir() {
        return local.to_path_buf();
    }
    vacpol::golden::default_dir()
}

pub fn resolve_momenta() -> PathBuf {
    let local = Path::new("data/momenta.json");
    if local.is_file() {
        return local.to_path_buf();
    }
    vacpol::verify::VerifyPaths::default().momenta
}

/// "name: provenance" lines of the frozen reference tables, in name order.
pub fn provenance_strings(golden_dir: &Path) -> Result<Vec<String>, CliError> {
    let files = vacpol::golden::load_dir(golden_dir).map_err(CliError::Numerics)?;
    Ok(files
        .iter()
        .map(|f| format!("{}: {}", f.name, f.provenance))
        .collect())
}

/// Maps `f` over `items` on up to `threads` workers, reassembling results in
/// input order; on error the earliest item's error wins.  Chunking only
/// partitions the work, so the output is identical at every thread count.
pub fn parallel_map<T, U, F>(items: &[T], threads: usize, f: F) -> Result<Vec<U>, CliError>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U, CliError> + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().map(|t| f(t)).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let chunk_results: Vec<Result<Vec<U>, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(|| part.iter().map(|t| f(t)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for r in chunk_results {
        out.extend(r?);
    }
    Ok(out)
}

/// `n` log-spaced points spanning [lo, hi] inclusive.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = hi / lo;
    (0..n)
        .map(|i| lo * ratio.powf(i as f64 / (n - 1) as f64))
        .collect()
}
