//! Machine-readable check results shared by the verifiers and the CLI.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one relation instance or identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn pass(id: impl Into<String>, instance: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            instance: instance.into(),
            status: Status::Pass,
            detail: None,
        }
    }

    pub fn fail(
        id: impl Into<String>,
        instance: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        CheckRecord {
            id: id.into(),
            instance: instance.into(),
            status: Status::Fail,
            detail: Some(detail.into()),
        }
    }

    pub fn skipped(
        id: impl Into<String>,
        instance: impl Into<String>,
        why: impl Into<String>,
    ) -> Self {
        CheckRecord {
            id: id.into(),
            instance: instance.into(),
            status: Status::Skipped,
            detail: Some(why.into()),
        }
    }

    pub fn from_bool(
        id: impl Into<String>,
        instance: impl Into<String>,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(id, instance)
        } else {
            Self::fail(id, instance, detail())
        }
    }
}

/// Ordered list of check records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// No record failed; skipped records do not count against the report.
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}
