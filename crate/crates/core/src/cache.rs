//! On-disk persistence of the structure-constant memo tables.
//!
//! The file is JSON with a `format_version`; values are decimal strings.
//! Writes go to a sibling temp file and are renamed into place.

use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::CycleType;
use crate::theta::{CacheSnapshot, StructureConstants};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    cycle: Vec<(usize, CycleType, CycleType, String)>,
    general: Vec<(CycleType, CycleType, CycleType, String)>,
}

fn parse_value(s: &str) -> Result<BigUint> {
    s.parse()
        .map_err(|_| Error::Cache(format!("bad coefficient {s:?}")))
}

pub fn to_json(snapshot: &CacheSnapshot) -> String {
    let file = CacheFile {
        format_version: FORMAT_VERSION,
        cycle: snapshot
            .cycle
            .iter()
            .map(|(l, a, b, v)| (*l, a.clone(), b.clone(), v.to_string()))
            .collect(),
        general: snapshot
            .general
            .iter()
            .map(|(e, a, b, v)| (e.clone(), a.clone(), b.clone(), v.to_string()))
            .collect(),
    };
    serde_json::to_string(&file).expect("cache serializes")
}

pub fn from_json(text: &str) -> Result<CacheSnapshot> {
    let file: CacheFile =
        serde_json::from_str(text).map_err(|e| Error::Cache(format!("unreadable: {e}")))?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Cache(format!(
            "format_version {} (expected {FORMAT_VERSION})",
            file.format_version
        )));
    }
    let cycle = file
        .cycle
        .into_iter()
        .map(|(l, a, b, v)| Ok((l, a, b, parse_value(&v)?)))
        .collect::<Result<_>>()?;
    let general = file
        .general
        .into_iter()
        .map(|(e, a, b, v)| Ok((e, a, b, parse_value(&v)?)))
        .collect::<Result<_>>()?;
    Ok(CacheSnapshot { cycle, general })
}

pub fn save(table: &StructureConstants, path: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, to_json(&table.snapshot())).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Loads `path` into `table`. A missing file is not an error; returns the
/// number of entries read.
pub fn load(table: &StructureConstants, path: &Path) -> Result<usize> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
    };
    let snapshot = from_json(&text)?;
    let n = snapshot.cycle.len() + snapshot.general.len();
    table.extend(snapshot);
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let t = StructureConstants::new();
        let eps: CycleType = "[1,1]".parse().unwrap();
        t.theta(&eps, &"[1]".parse().unwrap(), &"[0,1]".parse().unwrap());
        let snap = t.snapshot();
        let back = from_json(&to_json(&snap)).unwrap();
        assert_eq!(back, snap);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(from_json("{"), Err(Error::Cache(_))));
        let wrong = r#"{"format_version":2,"cycle":[],"general":[]}"#;
        assert!(matches!(from_json(wrong), Err(Error::Cache(_))));
        let bad_value = r#"{"format_version":1,"cycle":[[2,"[1]","[]","x"]],"general":[]}"#;
        assert!(matches!(from_json(bad_value), Err(Error::Cache(_))));
    }
}
