//! Regression corpus of known zeta functions, and a runner comparing computed
//! results against it.

use crate::engine::{topological_rep_zeta, EngineConfig, EngineError, ZetaResult};
use crate::exact::RationalFunction;
use crate::io::{AlgebraFile, InputError};
use crate::lie::{parse_expression, NilpotentLieAlgebra};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

const BUILTIN: &str = include_str!("../data/corpus.json");

/// An algebra given inline or as a catalog expression such as `L_{4,3}[eps]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Expression(String),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: AlgebraSpec,
    pub expected_zeta: String,
    #[serde(default)]
    pub expected_weight: Option<usize>,
    #[serde(default)]
    pub group: String,
    /// Excluded unless slow entries are requested.
    #[serde(default)]
    pub slow: bool,
    pub source: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus entry {0}: {1}")]
    Algebra(String, String),
    #[error("corpus entry {0}: expected value does not parse: {1}")]
    Expected(String, crate::format::ParseError),
    #[error(transparent)]
    Input(#[from] InputError),
}

impl CorpusEntry {
    pub fn algebra(&self) -> Result<NilpotentLieAlgebra, CorpusError> {
        let l = match &self.algebra {
            AlgebraSpec::Expression(e) => parse_expression(e).map_err(|err| CorpusError::Algebra(self.name.clone(), err.to_string()))?,
            AlgebraSpec::Inline(f) => f.to_algebra().map_err(|err| CorpusError::Algebra(self.name.clone(), err.to_string()))?,
        };
        Ok(l.with_name(self.name.clone()))
    }

    pub fn expected(&self) -> Result<RationalFunction, CorpusError> {
        crate::format::parse(&self.expected_zeta).map_err(|e| CorpusError::Expected(self.name.clone(), e))
    }
}

pub fn builtin() -> Vec<CorpusEntry> {
    load(BUILTIN).expect("built-in corpus is well-formed")
}

pub fn load(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let entries: Vec<CorpusEntry> = serde_json::from_str(text).map_err(InputError::from)?;
    for e in &entries {
        e.algebra()?;
        e.expected()?;
    }
    Ok(entries)
}

#[derive(Clone, Debug, Default)]
pub struct Filter {
    /// Substring of the entry name.
    pub name: Option<String>,
    pub dim: Option<usize>,
    pub weight: Option<usize>,
    pub group: Option<String>,
    pub include_slow: bool,
}

impl Filter {
    pub fn accepts(&self, e: &CorpusEntry) -> bool {
        if e.slow && !self.include_slow {
            return false;
        }
        if let Some(n) = &self.name {
            if !e.name.contains(n.as_str()) {
                return false;
            }
        }
        if let Some(g) = &self.group {
            if e.group != *g {
                return false;
            }
        }
        if let Some(w) = self.weight {
            if e.expected_weight != Some(w) {
                return false;
            }
        }
        if let Some(d) = self.dim {
            if e.algebra().map(|l| l.dim()).ok() != Some(d) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug)]
pub enum Status {
    Match,
    Mismatch { expected: RationalFunction },
    Failed(String),
    ReductionFailed(String),
}

#[derive(Debug)]
pub struct EntryReport {
    pub name: String,
    pub dim: usize,
    pub status: Status,
    pub result: Option<ZetaResult>,
    pub expected_weight: Option<usize>,
    pub elapsed: Duration,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Match)
    }

    /// `{"name", "zeta", "omega", "weight"}` without timing information.
    pub fn canonical_json(&self) -> serde_json::Value {
        let mut v = match &self.result {
            Some(r) => crate::format::json(&r.zeta, &r.omega, r.weight),
            None => serde_json::json!({ "error": status_text(&self.status) }),
        };
        v.as_object_mut().expect("object").insert("name".into(), self.name.clone().into());
        v
    }
}

fn status_text(s: &Status) -> String {
    match s {
        Status::Match => "match".into(),
        Status::Mismatch { expected } => format!("mismatch, expected {expected}"),
        Status::Failed(m) | Status::ReductionFailed(m) => m.clone(),
    }
}

pub fn run_entry(e: &CorpusEntry, cfg: &EngineConfig) -> EntryReport {
    let start = Instant::now();
    let report = |dim, status, result| EntryReport {
        name: e.name.clone(),
        dim,
        status,
        result,
        expected_weight: e.expected_weight,
        elapsed: start.elapsed(),
    };
    let l = match e.algebra() {
        Ok(l) => l,
        Err(err) => return report(0, Status::Failed(err.to_string()), None),
    };
    let expected = match e.expected() {
        Ok(x) => x,
        Err(err) => return report(l.dim(), Status::Failed(err.to_string()), None),
    };
    match topological_rep_zeta(&l, cfg) {
        Ok(r) => {
            let status = if r.zeta == expected { Status::Match } else { Status::Mismatch { expected } };
            report(l.dim(), status, Some(r))
        }
        Err(err @ EngineError::Reduction { .. }) => report(l.dim(), Status::ReductionFailed(err.to_string()), None),
        Err(err) => report(l.dim(), Status::Failed(err.to_string()), None),
    }
}

/// Runs entries concurrently on `jobs` workers (0: global pool); reports keep corpus order.
pub fn run(entries: &[CorpusEntry], cfg: &EngineConfig, jobs: usize) -> Vec<EntryReport> {
    let inner = EngineConfig { jobs: 0, ..cfg.clone() };
    let go = || entries.par_iter().map(|e| run_entry(e, &inner)).collect();
    if jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool").install(go)
    } else {
        go()
    }
}

/// Canonical JSON array of the reports, one object per entry.
pub fn canonical_json(reports: &[EntryReport]) -> String {
    let v: Vec<serde_json::Value> = reports.iter().map(EntryReport::canonical_json).collect();
    serde_json::to_string(&v).expect("serializable")
}
