//! Group definition files.
//!
//! A definition is a JSON object with a `name`, a `kind` and generators:
//!
//! ```json
//! { "name": "S4", "kind": "permutation", "degree": 4,
//!   "generators": ["(1 2 3 4)", "(1 2)"] }
//!
//! { "name": "SL(2,5)", "kind": "matrix", "dimension": 2, "modulus": 5,
//!   "generators": [[[1, 1], [0, 1]], [[0, 1], [4, 0]]] }
//! ```
//!
//! Permutation generators are products of disjoint cycles written
//! `(a b c)(d e)`, points `1..=degree`, fixed points omitted, `()` for the
//! identity. Products compose left to right: generator `(1 2)` followed by
//! generator `(1 3)` is `(1 2 3)`.
//! Matrix generators are row-major nested arrays with entries in
//! `[0, modulus)`; the modulus must be prime and each matrix invertible.

use serde::{Deserialize, Serialize};

use crate::element::{GroupElement, ModMatrix, Permutation, Shape};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDefinition {
    pub name: String,
    #[serde(flatten)]
    pub body: DefinitionBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DefinitionBody {
    Permutation {
        degree: usize,
        generators: Vec<String>,
    },
    Matrix {
        dimension: usize,
        modulus: u32,
        generators: Vec<Vec<Vec<u32>>>,
    },
}

impl GroupDefinition {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group definition: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn shape(&self) -> Shape {
        match &self.body {
            DefinitionBody::Permutation { degree, .. } => Shape::Permutation { degree: *degree },
            DefinitionBody::Matrix {
                dimension, modulus, ..
            } => Shape::Matrix {
                dimension: *dimension,
                modulus: *modulus,
            },
        }
    }

    pub fn generators(&self) -> Result<Vec<GroupElement>> {
        match &self.body {
            DefinitionBody::Permutation { degree, generators } => {
                if *degree == 0 {
                    return Err(Error::Parse("degree must be positive".into()));
                }
                generators
                    .iter()
                    .map(|s| Permutation::from_cycles(s, *degree).map(Into::into))
                    .collect()
            }
            DefinitionBody::Matrix {
                dimension,
                modulus,
                generators,
            } => generators
                .iter()
                .map(|rows| {
                    if rows.len() != *dimension || rows.iter().any(|r| r.len() != *dimension) {
                        return Err(Error::Parse(format!(
                            "generator {rows:?} is not {dimension}x{dimension}"
                        )));
                    }
                    ModMatrix::from_rows(*modulus, rows)
                        .map(Into::into)
                        .map_err(|e| Error::Parse(format!("generator {rows:?}: {e}")))
                })
                .collect(),
        }
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        FiniteGroup::generate(self.name.clone(), self.shape(), self.generators()?, cap)
    }
}
