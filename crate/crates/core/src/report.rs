//! Serializable reports shared by the engine, the verifiers, and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::garside::{GarsideStructure, NormalForm, Presentation};
use crate::summit::UssReport;

/// One named pass/fail check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// Text form of a [`UssReport`]:
/// `{presentation, n, inf, canonical_length, size, orbits}` with every
/// element serialized by [`NormalForm::serialize`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UssSummary {
    pub presentation: Presentation,
    pub n: usize,
    pub inf: i64,
    pub canonical_length: usize,
    pub size: usize,
    pub orbits: Vec<Vec<String>>,
}

impl UssSummary {
    pub fn new<G: GarsideStructure + ?Sized>(g: &G, report: &UssReport<G::Factor>) -> Self {
        UssSummary {
            presentation: g.presentation(),
            n: g.strands(),
            inf: report.inf(),
            canonical_length: report.canonical_length(),
            size: report.size(),
            orbits: report
                .orbits
                .iter()
                .map(|orbit| orbit.iter().map(|x| x.serialize(g)).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses every element back into a normal form for `g`.
    pub fn elements<G: GarsideStructure + ?Sized>(&self, g: &G) -> Result<Vec<NormalForm<G::Factor>>> {
        if g.presentation() != self.presentation || g.strands() != self.n {
            return Err(Error::InvalidArgument(format!(
                "summary is for {} on {} strands",
                self.presentation, self.n
            )));
        }
        self.orbits.iter().flatten().map(|s| NormalForm::parse(g, s)).collect()
    }
}

/// Outcome of one of the verifiers, with one row per family member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub presentation: Presentation,
    pub n: usize,
    pub family_size: usize,
    pub bound: Option<u64>,
    pub members: Vec<MemberRow>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.members.iter().all(|m| m.passed)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberRow {
    /// Order bits, band subset, or strand triple identifying the member.
    pub label: String,
    pub word: String,
    pub normal_form: String,
    pub inf: i64,
    pub canonical_length: usize,
    pub rigid: bool,
    pub conjugator: Option<String>,
    pub moves: Option<usize>,
    pub in_uss: Option<bool>,
    pub passed: bool,
}
