//! File formats: CSV datasets and tables, LIBSVM input, JSON manifests,
//! minimal SVG renderings and solver traces.
//!
//! Every output file starts with comment-prefixed header lines carrying the
//! tool version, the full argument vector, the seed and the wall-clock date.
//! Stripping those header lines, reruns with identical arguments are
//! byte-identical.

mod csv;
mod libsvm;
mod manifest;
mod svg;
mod trace;

pub use csv::{load_csv, write_labels_csv, write_matrix_csv, write_table};
pub use libsvm::load_libsvm;
pub use manifest::write_manifest;
pub use svg::{svg_heatmap, svg_lines};
pub use trace::{IterTimer, TraceWriter};

use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Malformed { path: String, line: usize, msg: String },
    #[error("{path}: file contains no data rows")]
    Empty { path: String },
    #[error("{path}: expected exactly two distinct labels, found {found:?}")]
    LabelCount { path: String, found: Vec<String> },
    #[error(transparent)]
    Core(#[from] discern_core::Error),
}

pub type IoResult<T> = Result<T, IoError>;

pub(crate) fn file_err(path: &std::path::Path, source: std::io::Error) -> IoError {
    IoError::File { path: path.display().to_string(), source }
}

/// Header block written at the top of every output file.
#[derive(Debug, Clone)]
pub struct FileHeader {
    pub args: String,
    pub seed: Option<u64>,
}

impl FileHeader {
    pub fn new(args: String, seed: Option<u64>) -> Self {
        FileHeader { args, seed }
    }

    pub fn render(&self, comment: &str) -> String {
        self.lines().map(|l| format!("{comment} {l}\n")).collect()
    }

    /// Header as XML comments, one per line, for SVG outputs.
    pub fn render_xml(&self) -> String {
        self.lines().map(|l| format!("<!-- {l} -->\n")).collect()
    }

    fn lines(&self) -> impl Iterator<Item = String> + '_ {
        let mut out = vec![
            format!("tool: discern {}", env!("CARGO_PKG_VERSION")),
            format!("args: {}", self.args),
        ];
        if let Some(seed) = self.seed {
            out.push(format!("seed: {seed}"));
        }
        out.push(format!("date: {}", utc_timestamp()));
        out.into_iter()
    }
}

/// UTC timestamp without pulling in a date crate (civil-from-days).
pub fn utc_timestamp() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let days = (secs / 86_400) as i64;
    let rem = secs % 86_400;
    let (h, m, s) = (rem / 3600, rem % 3600 / 60, rem % 60);
    let (y, mo, d) = civil_from_days(days);
    format!("{y:04}-{mo:02}-{d:02}T{h:02}:{m:02}:{s:02}Z")
}

fn civil_from_days(z: i64) -> (i64, u32, u32) {
    let z = z + 719_468;
    let era = if z >= 0 { z } else { z - 146_096 } / 146_097;
    let doe = (z - era * 146_097) as u64;
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let y = yoe as i64 + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let m = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    (if m <= 2 { y + 1 } else { y }, m, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timestamp_shape() {
        let t = utc_timestamp();
        assert_eq!(t.len(), 20);
        assert!(t.ends_with('Z'));
        assert_eq!(&t[4..5], "-");
    }

    #[test]
    fn civil_epoch() {
        assert_eq!(civil_from_days(0), (1970, 1, 1));
        assert_eq!(civil_from_days(19_723), (2024, 1, 1));
    }
}
