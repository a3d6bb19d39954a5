//! Machine-readable verification report.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Serialize)]
pub struct ClaimEntry {
    /// Stable identifier, one per acceptance criterion.
    pub claim_id: String,
    /// Human-readable statement of what was checked.
    pub statement: String,
    pub status: ClaimStatus,
    /// Small structured artifacts (counts, dimensions, residuals).
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub artifacts: serde_json::Value,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub suite_version: String,
    pub mode: String,
    pub entries: Vec<ClaimEntry>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.status != ClaimStatus::Fail)
    }
}
