//! File-format coverage: LIBSVM and CSV parsing, header handling and the
//! failure modes the loaders must name precisely.

use std::io::Write;
use std::path::PathBuf;

use discern::io::{load_csv, load_libsvm, svg_heatmap, svg_lines, IoError};

fn tmp_file(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("discern-format-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

#[test]
fn libsvm_basic_row_layout() {
    let p = tmp_file("basic.svm", "+1 1:0.5 3:2\n-1 2:1.5\n");
    let ds = load_libsvm(&p).unwrap();
    assert_eq!((ds.n(), ds.d()), (2, 3));
    assert_eq!(ds.x.row(0), &[0.5, 0.0, 2.0]);
    assert_eq!(ds.x.row(1), &[0.0, 1.5, 0.0]);
    let y = ds.single_truth().unwrap();
    assert_eq!(y.as_slice(), &[1.0, -1.0]);
    assert!(!ds.centered);
}

#[test]
fn libsvm_zero_one_labels_map_to_signs() {
    let p = tmp_file("zeroone.svm", "0 1:1\n1 1:2\n0 1:3\n");
    let ds = load_libsvm(&p).unwrap();
    assert_eq!(ds.single_truth().unwrap().as_slice(), &[-1.0, 1.0, -1.0]);
}

#[test]
fn libsvm_errors_carry_line_numbers() {
    let p = tmp_file("bad.svm", "+1 1:0.5\n-1 oops\n");
    match load_libsvm(&p) {
        Err(IoError::Malformed { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected malformed error, got {other:?}"),
    }
    let p = tmp_file("zerobased.svm", "+1 0:0.5\n");
    assert!(matches!(load_libsvm(&p), Err(IoError::Malformed { line: 1, .. })));
    let p = tmp_file("empty.svm", "\n# only comments\n");
    assert!(matches!(load_libsvm(&p), Err(IoError::Empty { .. })));
}

#[test]
fn libsvm_rejects_more_than_two_classes() {
    let p = tmp_file("three.svm", "0 1:1\n1 1:2\n2 1:3\n");
    assert!(matches!(load_libsvm(&p), Err(IoError::LabelCount { .. })));
}

#[test]
fn csv_with_header_and_label_column() {
    let p = tmp_file("tab.csv", "# comment\nf1,f2,class\n0.5,1.0,1\n-0.5,2.0,0\n1.5,0.0,1\n");
    let ds = load_csv(&p, true).unwrap();
    assert_eq!((ds.n(), ds.d()), (3, 2));
    assert_eq!(ds.single_truth().unwrap().as_slice(), &[1.0, -1.0, 1.0]);
}

#[test]
fn csv_malformed_line_number() {
    let p = tmp_file("badrow.csv", "1.0,2.0\n3.0,x\n");
    match load_csv(&p, false) {
        Err(IoError::Malformed { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected malformed error, got {other:?}"),
    }
    let p = tmp_file("ragged.csv", "1.0,2.0\n3.0\n");
    assert!(matches!(load_csv(&p, false), Err(IoError::Malformed { line: 2, .. })));
    let p = tmp_file("empty.csv", "# nothing\n");
    assert!(matches!(load_csv(&p, false), Err(IoError::Empty { .. })));
}

#[test]
fn svg_emitters_produce_valid_wrappers() {
    let heat = svg_heatmap(
        "t",
        &["d=5".into()],
        &["n=10".into(), "n=20".into()],
        &[vec![0.1, f64::NAN]],
    );
    assert!(heat.starts_with("<svg"));
    assert!(heat.trim_end().ends_with("</svg>"));
    let lines = svg_lines("t", &[("a".into(), vec![(0.0, 1.0), (1.0, 0.5)])]);
    assert!(lines.starts_with("<svg"));
    assert!(lines.contains("polyline"));
}
