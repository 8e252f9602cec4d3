//! Machine-readable verification and cohomology reports.
//!
//! JSON layouts are stable: struct field order is fixed and no hash maps are
//! involved, so identical runs serialize byte-identically.

use serde::{Deserialize, Serialize};

use crate::field::FieldSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    /// The identity being checked, in plain formula notation.
    pub law: String,
    pub status: ClauseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Clause {
    pub fn pass(name: impl Into<String>, law: impl Into<String>) -> Clause {
        Clause { name: name.into(), law: law.into(), status: ClauseStatus::Pass, witness: None }
    }

    pub fn fail(
        name: impl Into<String>,
        law: impl Into<String>,
        witness: impl Into<String>,
    ) -> Clause {
        Clause {
            name: name.into(),
            law: law.into(),
            status: ClauseStatus::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(
        name: impl Into<String>,
        law: impl Into<String>,
        reason: impl Into<String>,
    ) -> Clause {
        Clause {
            name: name.into(),
            law: law.into(),
            status: ClauseStatus::Skipped,
            witness: Some(reason.into()),
        }
    }

    pub fn from_witness(
        name: impl Into<String>,
        law: impl Into<String>,
        witness: Option<String>,
    ) -> Clause {
        match witness {
            None => Clause::pass(name, law),
            Some(w) => Clause::fail(name, law, w),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub algebra: String,
    pub clauses: Vec<Clause>,
    pub seed: u64,
    pub trials: usize,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, algebra: impl Into<String>, seed: u64, trials: usize) -> Self {
        VerificationReport {
            suite: suite.into(),
            algebra: algebra.into(),
            clauses: Vec::new(),
            seed,
            trials,
        }
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.status != ClauseStatus::Fail)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.clauses.extend(other.clauses);
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeReport {
    pub n: usize,
    pub dim: usize,
    #[serde(rename = "rankIn")]
    pub rank_in: usize,
    #[serde(rename = "rankOut")]
    pub rank_out: usize,
    pub betti: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub field: FieldSpec,
    pub kind: String,
    pub degrees: Vec<DegreeReport>,
    /// Per-prime Betti tables computed as a consistency heuristic for
    /// characteristic zero; disagreements are flagged, never merged.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub cross_checks: Vec<PrimeCrossCheck>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimeCrossCheck {
    pub prime: u64,
    pub betti: Vec<usize>,
    pub agrees: bool,
    pub note: String,
}

impl CohomologyReport {
    pub fn betti_vector(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }
}
