//! Check records and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// An expected-negative fixture failed as predicted.
    Fail,
    /// A guaranteed statement or a fixture expectation was violated.
    Falsified,
    SkippedResource,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Falsified => "falsified",
            Status::SkippedResource => "skipped-resource",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub instance: String,
    pub check: String,
    pub status: Status,
    /// Certificate or counterexample fields, rendered with degrees.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witness: BTreeMap<String, String>,
    pub detail: String,
    pub time_ms: u64,
}

#[derive(Serialize, Deserialize)]
struct MachineReport {
    version: u32,
    records: Vec<CheckReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "machine" | "json" => Ok(Format::Machine),
            other => Err(format!("unknown format `{other}` (text or machine)")),
        }
    }
}

/// Sorts by check name, then instance.
pub fn normalize(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| (&a.check, &a.instance).cmp(&(&b.check, &b.instance)));
}

pub fn emit(reports: &[CheckReport], format: Format) -> String {
    let mut sorted = reports.to_vec();
    normalize(&mut sorted);
    match format {
        Format::Text => emit_text(&sorted),
        Format::Machine => {
            let doc = MachineReport {
                version: REPORT_VERSION,
                records: sorted,
            };
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
    }
}

/// Parses a machine report back into records.
pub fn parse_machine(text: &str) -> Result<Vec<CheckReport>, serde_json::Error> {
    let doc: MachineReport = serde_json::from_str(text)?;
    Ok(doc.records)
}

fn emit_text(reports: &[CheckReport]) -> String {
    let mut counts: BTreeMap<Status, usize> = BTreeMap::new();
    for r in reports {
        *counts.entry(r.status).or_default() += 1;
    }
    let tally = [Status::Pass, Status::Fail, Status::Falsified, Status::SkippedResource]
        .iter()
        .map(|s| format!("{} {s}", counts.get(s).copied().unwrap_or(0)))
        .collect::<Vec<_>>()
        .join(", ");
    let mut out = format!("# gradnil report v{REPORT_VERSION}: {} records ({tally})\n", reports.len());
    for r in reports {
        out.push_str(&format!("{:<16} {} :: {}", r.status.to_string(), r.check, r.instance));
        if !r.detail.is_empty() {
            out.push_str(&format!(" :: {}", r.detail));
        }
        out.push('\n');
        for (k, v) in &r.witness {
            out.push_str(&format!("    {k} = {v}\n"));
        }
    }
    out
}

/// 0 all pass, 1 falsified, 3 resource cap reached (falsification wins).
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Falsified) {
        1
    } else if reports.iter().any(|r| r.status == Status::SkippedResource) {
        3
    } else {
        0
    }
}
