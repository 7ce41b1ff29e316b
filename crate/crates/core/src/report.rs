//! Check records and campaign reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::presentations::InstanceKey;
use crate::rootdata::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The instance needs a fractional power of a sign variable.
    OutOfDomain,
    /// A claimed table identity does not hold for this datum; reported, not asserted.
    Discrepancy,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::OutOfDomain => "out_of_domain",
            Status::Discrepancy => "discrepancy",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// 1-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Weight>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, status: Status) -> Self {
        CheckRecord {
            id: id.into(),
            family: None,
            i: None,
            j: None,
            lambda: None,
            status,
            scalar: None,
            witness: None,
            detail: None,
        }
    }

    pub fn for_key(prefix: &str, key: &InstanceKey, status: Status) -> Self {
        CheckRecord {
            family: Some(key.family.tag().to_string()),
            i: Some(key.i + 1),
            j: Some(key.j + 1),
            lambda: key.lambda.clone(),
            ..CheckRecord::new(format!("{prefix}{}", key.id()), status)
        }
    }

    pub fn indices(mut self, i: usize, j: usize) -> Self {
        self.i = Some(i + 1);
        self.j = Some(j + 1);
        self
    }

    pub fn at(mut self, lambda: &Weight) -> Self {
        self.lambda = Some(lambda.clone());
        self
    }

    pub fn family(mut self, f: impl Into<String>) -> Self {
        self.family = Some(f.into());
        self
    }

    pub fn scalar(mut self, s: impl Into<String>) -> Self {
        self.scalar = Some(s.into());
        self
    }

    pub fn witness(mut self, s: impl Into<String>) -> Self {
        self.witness = Some(s.into());
        self
    }

    pub fn detail(mut self, s: impl Into<String>) -> Self {
        self.detail = Some(s.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub out_of_domain: usize,
    pub discrepancy: usize,
}

impl Summary {
    pub fn of(checks: &[CheckRecord]) -> Self {
        let mut s = Summary::default();
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::OutOfDomain => s.out_of_domain += 1,
                Status::Discrepancy => s.discrepancy += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub campaign: String,
    pub datum: String,
    pub case: String,
    pub engine_version: String,
    /// Conventions and parameter choices in force for this run.
    pub notes: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(campaign: &str, datum: &str, case: &str, checks: Vec<CheckRecord>) -> Self {
        Report {
            campaign: campaign.into(),
            datum: datum.into(),
            case: case.into(),
            engine_version: env!("CARGO_PKG_VERSION").into(),
            notes: BTreeMap::new(),
            summary: Summary::of(&checks),
            checks,
            elapsed_ms: None,
        }
    }

    pub fn note(mut self, k: impl Into<String>, v: impl Into<String>) -> Self {
        self.notes.insert(k.into(), v.into());
        self
    }

    /// True when no check failed (out-of-domain and discrepancy records do not count).
    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "campaign: {}", self.campaign);
        let _ = writeln!(s, "datum:    {}", self.datum);
        let _ = writeln!(s, "case:     {}", self.case);
        for (k, v) in &self.notes {
            let _ = writeln!(s, "note {k}: {v}");
        }
        for c in &self.checks {
            let _ = write!(s, "{:<13} {}", c.status.as_str(), c.id);
            if let Some(x) = &c.scalar {
                let _ = write!(s, "  scalar={x}");
            }
            if let Some(x) = &c.detail {
                let _ = write!(s, "  {x}");
            }
            if let Some(x) = &c.witness {
                let _ = write!(s, "  witness: {x}");
            }
            s.push('\n');
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "summary: pass={} fail={} out_of_domain={} discrepancy={}",
            m.pass, m.fail, m.out_of_domain, m.discrepancy
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed_ms: {ms}");
        }
        s
    }
}

/// Concatenates several reports into one under a common campaign name.
pub fn merge(campaign: &str, datum: &str, case: &str, parts: Vec<Report>) -> Report {
    let mut notes = BTreeMap::new();
    let mut checks = Vec::new();
    for p in parts {
        for (k, v) in p.notes {
            notes.insert(format!("{}.{k}", p.campaign), v);
        }
        checks.extend(p.checks.into_iter().map(|mut c| {
            c.id = format!("{}/{}", p.campaign, c.id);
            c
        }));
    }
    let mut r = Report::new(campaign, datum, case, checks);
    r.notes = notes;
    r
}
