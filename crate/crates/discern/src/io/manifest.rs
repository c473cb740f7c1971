//! JSON provenance manifests written next to generated datasets.

use std::fs;
use std::path::Path;

use discern_core::data::NoiseSpec;
use serde_json::json;

use super::{file_err, utc_timestamp, IoResult};

pub fn write_manifest(
    path: &Path,
    args: &str,
    seed: u64,
    generator: &str,
    params: serde_json::Value,
    noise: Option<&NoiseSpec>,
) -> IoResult<()> {
    let mut doc = json!({
        "tool": format!("discern {}", env!("CARGO_PKG_VERSION")),
        "args": args,
        "date": utc_timestamp(),
        "seed": seed,
        "generator": generator,
        "params": params,
    });
    if let Some(spec) = noise {
        doc["noise"] = json!({
            "law": spec.name(),
            "second_moment": spec.m,
            "kurtosis": spec.beta,
            "bound": spec.r,
        });
    }
    let text = serde_json::to_string_pretty(&doc).expect("manifest serialization");
    fs::write(path, text).map_err(|e| file_err(path, e))
}
