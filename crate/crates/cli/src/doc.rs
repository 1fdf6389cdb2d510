//! The JSON file format: `{"n": int, "classes": [[int]]}`.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use schurring::SRing;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SRingDocument {
    pub n: usize,
    pub classes: Vec<Vec<usize>>,
}

impl SRingDocument {
    /// Canonical document of a ring.
    pub fn from_ring(a: &SRing) -> Self {
        SRingDocument {
            n: a.n(),
            classes: a.classes().to_vec(),
        }
    }

    /// Validates the partition. Errors carry the violated axiom.
    pub fn into_ring(self) -> schurring::Result<SRing> {
        SRing::validate(self.n, self.classes)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("not an S-ring document")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n")
            .with_context(|| format!("cannot write {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"n":4,"classes":[[0],[1,3],[2]]}"#;
        let doc = SRingDocument::parse(text).unwrap();
        assert_eq!(doc.to_json(), text);
        let ring = doc.clone().into_ring().unwrap();
        assert_eq!(SRingDocument::from_ring(&ring), doc);
    }

    #[test]
    fn input_order_does_not_matter() {
        let doc = SRingDocument::parse(r#"{"n":4,"classes":[[3,1],[2],[0]]}"#).unwrap();
        let ring = doc.into_ring().unwrap();
        assert_eq!(
            SRingDocument::from_ring(&ring).to_json(),
            r#"{"n":4,"classes":[[0],[1,3],[2]]}"#
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(SRingDocument::parse("{\"n\": 4}").is_err());
        assert!(SRingDocument::parse("[1,2]").is_err());
        assert!(SRingDocument::parse(r#"{"n":2,"classes":[[0],[1]],"x":1}"#).is_err());
    }
}
