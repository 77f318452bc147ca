//! Report records shared with the command-line runner.
//!
//! A report echoes its configuration, lists one verdict per named check and
//! carries data tables. The JSON layout is described by
//! `schema/report.schema.json`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// The published JSON schema for [`Report`].
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Computed and reported without gating the exit status.
    Recorded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    /// The invariant or operation the verdict belongs to.
    pub check: String,
    pub verdict: Verdict,
    pub detail: Value,
}

impl Record {
    pub fn new(check: impl Into<String>, verdict: Verdict, detail: impl Serialize) -> Self {
        let detail = serde_json::to_value(detail)
            .unwrap_or_else(|e| Value::String(format!("unserialisable detail: {e}")));
        Self {
            check: check.into(),
            verdict,
            detail,
        }
    }

    pub fn gate(check: impl Into<String>, ok: bool, detail: impl Serialize) -> Self {
        Self::new(
            check,
            if ok { Verdict::Pass } else { Verdict::Fail },
            detail,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Versions {
    pub package: String,
    pub scheme: u32,
}

impl Default for Versions {
    fn default() -> Self {
        Self {
            package: env!("CARGO_PKG_VERSION").to_string(),
            scheme: crate::spectra::SCHEME_VERSION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub records: Vec<Record>,
    pub tables: BTreeMap<String, Value>,
    /// Wall-clock seconds per phase.
    pub timing: BTreeMap<String, f64>,
    pub versions: Versions,
}

impl Report {
    pub fn new(command: impl Into<String>, config: impl Serialize) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.into(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            records: Vec::new(),
            tables: BTreeMap::new(),
            timing: BTreeMap::new(),
            versions: Versions::default(),
        }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn table(&mut self, name: impl Into<String>, value: impl Serialize) {
        self.tables.insert(
            name.into(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
    }

    pub fn time(&mut self, phase: impl Into<String>, seconds: f64) {
        self.timing.insert(phase.into(), seconds);
    }

    /// True when no record failed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_aggregation() {
        let mut r = Report::new("verify-algebra", serde_json::json!({"t": "1/4"}));
        r.push(Record::gate("group-axioms", true, 1000));
        r.push(Record::new("beta-automorphism", Verdict::Recorded, false));
        assert!(r.passed());
        r.push(Record::gate("witness", false, "γ = e"));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["records"][1]["verdict"], "recorded");
        assert_eq!(json["schema_version"], 1);
    }

    #[test]
    fn schema_is_json() {
        let s: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
        assert_eq!(s["type"], "object");
    }
}
