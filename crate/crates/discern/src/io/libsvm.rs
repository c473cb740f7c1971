//! LIBSVM text format: one observation per line, `label idx:val ...` with
//! 1-based feature indices; omitted features are zero. Loaded dense.

use std::fs;
use std::path::Path;

use discern_core::data::{Dataset, Truth};
use discern_core::mat::Mat;

use super::csv::map_two_class;
use super::{file_err, IoError, IoResult};

pub fn load_libsvm(path: &Path) -> IoResult<Dataset> {
    let text = fs::read_to_string(path).map_err(|e| file_err(path, e))?;
    let pathstr = path.display().to_string();
    let mut raw_labels: Vec<f64> = Vec::new();
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut max_index = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let label_tok = fields.next().expect("non-empty line");
        let label: f64 = label_tok.parse().map_err(|_| IoError::Malformed {
            path: pathstr.clone(),
            line: lineno + 1,
            msg: format!("bad label '{label_tok}'"),
        })?;
        let mut entries = Vec::new();
        for tok in fields {
            let (idx, val) = tok.split_once(':').ok_or_else(|| IoError::Malformed {
                path: pathstr.clone(),
                line: lineno + 1,
                msg: format!("expected idx:val, found '{tok}'"),
            })?;
            let idx: usize = idx.parse().map_err(|_| IoError::Malformed {
                path: pathstr.clone(),
                line: lineno + 1,
                msg: format!("bad feature index '{idx}'"),
            })?;
            if idx == 0 {
                return Err(IoError::Malformed {
                    path: pathstr.clone(),
                    line: lineno + 1,
                    msg: "feature indices are 1-based".into(),
                });
            }
            let val: f64 = val.parse().map_err(|_| IoError::Malformed {
                path: pathstr.clone(),
                line: lineno + 1,
                msg: format!("bad feature value '{val}'"),
            })?;
            max_index = max_index.max(idx);
            entries.push((idx - 1, val));
        }
        raw_labels.push(label);
        rows.push(entries);
    }
    if rows.is_empty() {
        return Err(IoError::Empty { path: pathstr });
    }
    let mut x = Mat::zeros(rows.len(), max_index.max(1));
    for (i, entries) in rows.iter().enumerate() {
        for &(j, v) in entries {
            x[(i, j)] = v;
        }
    }
    let labels = map_two_class(&raw_labels, &pathstr)?;
    Ok(Dataset::new(x, false, Some(Truth::Single(labels)), format!("libsvm:{pathstr}"))?)
}
