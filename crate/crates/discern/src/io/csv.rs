//! CSV reading and writing. Comma separators, `.` decimal point, `#`
//! comment lines; an optional header row on input is detected by a
//! non-numeric first data line.

use std::fs;
use std::path::Path;

use discern_core::data::{Dataset, Labeling, Truth};
use discern_core::mat::Mat;

use super::{file_err, FileHeader, IoError, IoResult};

pub fn write_matrix_csv(path: &Path, header: &FileHeader, m: &Mat) -> IoResult<()> {
    let mut out = header.render("#");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| file_err(path, e))
}

pub fn write_labels_csv(path: &Path, header: &FileHeader, labels: &[f64]) -> IoResult<()> {
    let mut out = header.render("#");
    for v in labels {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| file_err(path, e))
}

/// Generic table with a named header row.
pub fn write_table(
    path: &Path,
    header: &FileHeader,
    columns: &[&str],
    rows: &[Vec<String>],
) -> IoResult<()> {
    let mut out = header.render("#");
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| file_err(path, e))
}

/// Loads a dense numeric CSV. With `label_column` the final column holds
/// class labels, which must take exactly two distinct values and are mapped
/// to -1/+1 (smaller raw value to -1). Returned dataset is not centered.
pub fn load_csv(path: &Path, label_column: bool) -> IoResult<Dataset> {
    let text = fs::read_to_string(path).map_err(|e| file_err(path, e))?;
    let pathstr = path.display().to_string();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut raw_labels: Vec<f64> = Vec::new();
    let mut width: Option<usize> = None;
    let mut saw_data_line = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if !saw_data_line => continue, // header row
            Err(_) => {
                return Err(IoError::Malformed {
                    path: pathstr,
                    line: lineno + 1,
                    msg: format!("non-numeric field in '{line}'"),
                })
            }
        };
        saw_data_line = true;
        let w = *width.get_or_insert(values.len());
        if values.len() != w {
            return Err(IoError::Malformed {
                path: pathstr,
                line: lineno + 1,
                msg: format!("expected {w} fields, found {}", values.len()),
            });
        }
        if label_column {
            if values.len() < 2 {
                return Err(IoError::Malformed {
                    path: pathstr,
                    line: lineno + 1,
                    msg: "label column requested but row has a single field".into(),
                });
            }
            raw_labels.push(*values.last().unwrap());
            rows.push(values[..values.len() - 1].to_vec());
        } else {
            rows.push(values);
        }
    }
    if rows.is_empty() {
        return Err(IoError::Empty { path: pathstr });
    }
    let d = rows[0].len();
    let x = Mat::from_fn(rows.len(), d, |i, j| rows[i][j]);
    let truth = if label_column {
        Some(Truth::Single(map_two_class(&raw_labels, &pathstr)?))
    } else {
        None
    };
    Ok(Dataset::new(x, false, truth, format!("csv:{pathstr}"))?)
}

/// Maps two distinct raw label values onto -1/+1 (smaller value to -1).
pub(crate) fn map_two_class(raw: &[f64], path: &str) -> IoResult<Labeling> {
    let mut distinct: Vec<f64> = Vec::new();
    for &v in raw {
        if !distinct.iter().any(|&d| d == v) {
            distinct.push(v);
        }
    }
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if distinct.len() != 2 {
        return Err(IoError::LabelCount {
            path: path.to_string(),
            found: distinct.iter().map(|v| v.to_string()).collect(),
        });
    }
    let y: Vec<f64> = raw.iter().map(|&v| if v == distinct[0] { -1.0 } else { 1.0 }).collect();
    Ok(Labeling::from_signs(y)?)
}
