//! JSON module-spec files.
//!
//! ```json
//! {"p": 2, "rank": 2, "frobenius": [["E^3", "u"], ["0", "1"]], "name": "hand"}
//! ```
//!
//! `frobenius` is row-major; column `j` is the image of basis vector `j`.

use std::fmt;
use std::path::Path;

use nygaard_core::bkcore::{BKModule, PolyMat};
use nygaard_core::exactring::{parse_poly, Prime};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecFile {
    pub p: u64,
    pub rank: usize,
    pub frobenius: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// Why a spec was rejected.
#[derive(Debug)]
pub enum SpecError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Shape(String),
    Entry {
        row: usize,
        col: usize,
        text: String,
        source: nygaard_core::Error,
    },
    Module(nygaard_core::Error),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Io(e) => write!(f, "cannot read spec: {e}"),
            SpecError::Json(e) => write!(f, "malformed spec: {e}"),
            SpecError::Shape(msg) => write!(f, "malformed spec: {msg}"),
            SpecError::Entry {
                row,
                col,
                text,
                source,
            } => {
                write!(f, "frobenius[{row}][{col}] = {text:?}: {source}")
            }
            SpecError::Module(e) => write!(f, "invalid module: {e}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl ModuleSpecFile {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(SpecError::Json)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn to_module(&self) -> Result<BKModule, SpecError> {
        let p = Prime::new(self.p).map_err(SpecError::Module)?;
        if self.frobenius.len() != self.rank || self.frobenius.iter().any(|r| r.len() != self.rank)
        {
            return Err(SpecError::Shape(format!(
                "frobenius must be a {0}x{0} array",
                self.rank
            )));
        }
        let rows = self
            .frobenius
            .iter()
            .enumerate()
            .map(|(row, entries)| {
                entries
                    .iter()
                    .enumerate()
                    .map(|(col, text)| {
                        parse_poly(text, p).map_err(|source| SpecError::Entry {
                            row,
                            col,
                            text: text.clone(),
                            source,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        BKModule::new(p, PolyMat::from_rows(rows), self.name.clone()).map_err(SpecError::Module)
    }

    /// Canonical spec: entries printed in `u`.
    pub fn from_module(m: &BKModule) -> Self {
        let b = m.frobenius();
        ModuleSpecFile {
            p: m.prime().get(),
            rank: m.rank(),
            frobenius: (0..b.rows())
                .map(|i| (0..b.cols()).map(|j| b[(i, j)].to_string()).collect())
                .collect(),
            name: m.name().map(str::to_owned),
        }
    }
}

pub fn parse_spec(text: &str) -> Result<BKModule, SpecError> {
    ModuleSpecFile::from_json(text)?.to_module()
}

pub fn load_spec(path: &Path) -> Result<BKModule, SpecError> {
    let text = std::fs::read_to_string(path).map_err(SpecError::Io)?;
    parse_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_examples() {
        let m = parse_spec(r#"{"p":2,"rank":2,"frobenius":[["E^3","u"],["0","1"]]}"#).unwrap();
        assert_eq!(m.det_exponent(), 3);
        let m = parse_spec(r#"{"p":3,"rank":1,"frobenius":[["E^2"]]}"#).unwrap();
        assert_eq!(m.det_exponent(), 2);
    }

    #[test]
    fn rejects_bad_specs() {
        let err = parse_spec(r#"{"p":2,"rank":1,"frobenius":[["1/2"]]}"#).unwrap_err();
        assert!(
            matches!(err, SpecError::Entry { row: 0, col: 0, .. }),
            "{err}"
        );
        assert!(matches!(
            parse_spec(r#"{"p":4,"rank":1,"frobenius":[["1"]]}"#),
            Err(SpecError::Module(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"p":2,"rank":2,"frobenius":[["1"]]}"#),
            Err(SpecError::Shape(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"p":2,"rank":1}"#),
            Err(SpecError::Json(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"p":2,"rank":2,"frobenius":[["2","0"],["0","E"]]}"#),
            Err(SpecError::Module(
                nygaard_core::Error::InfiniteHeight { .. }
            ))
        ));
    }

    #[test]
    fn round_trip() {
        let spec = ModuleSpecFile::from_json(
            r#"{"p":3,"rank":2,"frobenius":[["E^2 + 1/2*u + 1","3"],["0","(u-3)*(u+1)"]],"name":"x"}"#,
        )
        .unwrap();
        let m = spec.to_module().unwrap();
        let canonical = ModuleSpecFile::from_module(&m);
        let again = ModuleSpecFile::from_json(&canonical.to_json()).unwrap();
        assert_eq!(again, canonical);
        assert_eq!(again.to_module().unwrap(), m);
    }
}
