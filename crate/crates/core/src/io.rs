//! JSON input format for Lie algebras.

use crate::exact::{format_rational, parse_rational};
use crate::lie::{LieError, NilpotentLieAlgebra};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `{"name": .., "dim": h, "brackets": {"[i,j]": {"k": "p/q"}}}` with 1-based indices, `i < j`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default)]
    pub brackets: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("JSON error at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("bad bracket key `{0}` (expected \"[i,j]\" with i < j)")]
    BadKey(String),
    #[error("bad basis index `{0}`")]
    BadIndex(String),
    #[error("bad rational `{0}`")]
    BadRational(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Json { line: e.line(), column: e.column(), msg: e.to_string() }
    }
}

fn parse_key(key: &str) -> Result<(usize, usize), InputError> {
    let bad = || InputError::BadKey(key.to_string());
    let inner = key.trim().strip_prefix('[').and_then(|k| k.strip_suffix(']')).ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i >= j {
        return Err(bad());
    }
    Ok((i, j))
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<NilpotentLieAlgebra, InputError> {
        let mut br = vec![];
        for (key, vals) in &self.brackets {
            let (i, j) = parse_key(key)?;
            for (k, v) in vals {
                let k: usize = k.trim().parse().map_err(|_| InputError::BadIndex(k.clone()))?;
                let c = parse_rational(v).ok_or_else(|| InputError::BadRational(v.clone()))?;
                br.push((i, j, k, c));
            }
        }
        let mut l = NilpotentLieAlgebra::from_brackets(self.dim, &br)?;
        l.name = self.name.clone();
        l.validate()?;
        Ok(l)
    }

    pub fn from_algebra(l: &NilpotentLieAlgebra) -> AlgebraFile {
        let mut brackets: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (i, j, k, c) in l.brackets() {
            brackets.entry(format!("[{i},{j}]")).or_default().insert(k.to_string(), format_rational(&c));
        }
        AlgebraFile { name: l.name.clone(), dim: l.dim(), brackets }
    }
}

pub fn parse_algebra_text(text: &str) -> Result<NilpotentLieAlgebra, InputError> {
    let f: AlgebraFile = serde_json::from_str(text)?;
    f.to_algebra()
}

pub fn emit_algebra(l: &NilpotentLieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(l)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_heisenberg() {
        let l = parse_algebra_text(r#"{"name":"H","dim":3,"brackets":{"[1,2]":{"3":"1"}}}"#).unwrap();
        assert_eq!(l.brackets().len(), 1);
        let line = parse_algebra_text(r#"{"dim":1,"brackets":{}}"#).unwrap();
        assert!(line.is_abelian());
    }

    #[test]
    fn jacobi_violation_reported() {
        let text = r#"{"dim":5,"brackets":{"[1,2]":{"3":"1"},"[3,4]":{"5":"1"}}}"#;
        assert!(matches!(parse_algebra_text(text), Err(InputError::Lie(LieError::Jacobi(1, 2, 4)))));
        let bad = parse_algebra_text("{\"dim\": 3,\n \"brackets\": [}");
        assert!(matches!(bad, Err(InputError::Json { line: 2, .. })));
    }

    #[test]
    fn round_trip() {
        let l = crate::lie::preset("L_{6,14}").unwrap();
        assert_eq!(parse_algebra_text(&emit_algebra(&l)).unwrap().brackets(), l.brackets());
    }
}
