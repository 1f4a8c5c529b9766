//! Built-in catalog of small groups with known facts, stored as data.

use serde::{Deserialize, Serialize};

use crate::definition::GroupDefinition;
use crate::error::{Error, Result};

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFacts {
    pub order: usize,
    pub solvable: bool,
    pub simple: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(flatten)]
    pub definition: GroupDefinition,
    pub expected: ExpectedFacts,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.definition.name
    }
}

/// C6, S3, A4, S4, D10, F20, A5, S5, SL(2,5), PSL(2,7), SL(2,7), A6.
pub fn builtin() -> Vec<CatalogEntry> {
    serde_json::from_str(CATALOG_JSON).expect("embedded catalog is valid")
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    builtin()
        .into_iter()
        .find(|e| e.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Parse(format!("no catalog group named `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_twelve_groups() {
        let names: Vec<String> = builtin().iter().map(|e| e.name().to_string()).collect();
        assert_eq!(
            names,
            [
                "C6", "S3", "A4", "S4", "D10", "F20", "A5", "S5", "SL(2,5)", "PSL(2,7)", "SL(2,7)",
                "A6"
            ]
        );
        assert!(lookup("sl(2,5)").is_ok());
        assert!(lookup("M11").is_err());
    }
}
