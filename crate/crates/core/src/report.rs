//! Structured verification results.
//!
//! Every number is carried as an exact decimal string. Struct fields are
//! declared in alphabetical order and maps are `BTreeMap`s, so serialized
//! keys come out sorted and the bytes are stable across runs.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Outside the range where an identity is claimed; recorded, not judged.
    Exploratory,
    Fail,
}

impl Status {
    // Fail dominates exploratory, which dominates pass.
    fn combine(self, other: Status) -> Status {
        self.max(other)
    }
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Exploratory => "exploratory",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detail {
    pub case: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub expected: String,
    pub got: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub status: Status,
}

impl Detail {
    pub fn new(
        case: BTreeMap<String, String>,
        status: Status,
        expected: impl Display,
        got: impl Display,
    ) -> Self {
        Self {
            case,
            certificate: None,
            expected: expected.to_string(),
            got: got.to_string(),
            note: None,
            status,
        }
    }

    /// A detail whose status is pass iff `expected == got`.
    pub fn compare(case: BTreeMap<String, String>, expected: impl Display, got: impl Display) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        let status = if expected == got { Status::Pass } else { Status::Fail };
        Self::new(case, status, expected, got)
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn certificate(mut self, certificate: impl Into<String>) -> Self {
        self.certificate = Some(certificate.into());
        self
    }
}

/// Builds a case map from `key=value` pairs.
#[macro_export]
macro_rules! case {
    ($($key:literal => $value:expr),* $(,)?) => {{
        let mut map = ::std::collections::BTreeMap::new();
        $(map.insert($key.to_string(), $value.to_string());)*
        map
    }};
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub details: Vec<Detail>,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            details: Vec::new(),
            params: BTreeMap::new(),
            status: Status::Pass,
            timing_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, detail: Detail) {
        self.status = self.status.combine(detail.status);
        self.details.push(detail);
    }

    pub fn extend(&mut self, details: impl IntoIterator<Item = Detail>) {
        for d in details {
            self.push(d);
        }
    }

    /// Appends another report's details.
    pub fn absorb(&mut self, other: Report) {
        self.extend(other.details);
    }

    pub fn with_timing(mut self, ms: u64) -> Self {
        self.timing_ms = ms;
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn failures(&self) -> impl Iterator<Item = &Detail> {
        self.details.iter().filter(|d| d.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering, one line per detail.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let params = join_map(&self.params);
        let _ = writeln!(out, "{} {}", self.command, params);
        for d in &self.details {
            let _ = write!(
                out,
                "  [{}] {}: expected {}, got {}",
                d.status,
                join_map(&d.case),
                d.expected,
                d.got
            );
            if let Some(note) = &d.note {
                let _ = write!(out, " ({note})");
            }
            match &d.certificate {
                Some(cert) if cert.contains('\n') => {
                    out.push_str("\n    certificate:");
                    for line in cert.lines() {
                        let _ = write!(out, "\n      {line}");
                    }
                }
                Some(cert) => {
                    let _ = write!(out, " [certificate: {cert}]");
                }
                None => {}
            }
            out.push('\n');
        }
        let _ = writeln!(out, "status: {}", self.status);
        out
    }
}

fn join_map(map: &BTreeMap<String, String>) -> String {
    map.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}
