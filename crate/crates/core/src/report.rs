//! Verdicts and their aggregation.
//!
//! A verdict keeps at most [`DETAIL_LIMIT`] diagnostics; the full failure count
//! lives in its counters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const DETAIL_LIMIT: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub details: Vec<String>,
    pub counters: BTreeMap<String, u64>,
}

impl Verdict {
    pub fn new(check: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            status: Status::Pass,
            details: Vec::new(),
            counters: BTreeMap::new(),
        }
    }

    pub fn not_applicable(check: impl Into<String>, why: impl Into<String>) -> Self {
        let mut v = Verdict::new(check);
        v.status = Status::NotApplicable;
        v.details.push(why.into());
        v
    }

    /// Records a failure. The verdict turns `fail`; details are truncated.
    pub fn fail(&mut self, detail: impl Into<String>) {
        self.status = Status::Fail;
        *self.counters.entry("failures".into()).or_default() += 1;
        if self.details.len() < DETAIL_LIMIT {
            self.details.push(detail.into());
        }
    }

    /// Records an informational line without changing the status.
    pub fn note(&mut self, detail: impl Into<String>) {
        if self.details.len() < DETAIL_LIMIT {
            self.details.push(detail.into());
        }
    }

    pub fn count(&mut self, key: &str, by: u64) {
        *self.counters.entry(key.into()).or_default() += by;
    }

    /// Checks `ok`, recording `detail()` on failure.
    pub fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.count("checked", 1);
        if !ok {
            self.fail(detail());
        }
        ok
    }

    /// Folds `other` into `self` under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: &Verdict) {
        for (k, v) in &other.counters {
            self.count(k, *v);
        }
        if other.status == Status::Fail {
            self.status = Status::Fail;
            for d in &other.details {
                if self.details.len() < DETAIL_LIMIT {
                    self.details.push(format!("{prefix}: {d}"));
                }
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}", self.status, self.check);
        if !self.counters.is_empty() {
            let c: Vec<String> = self.counters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            s.push_str(&format!(" [{}]", c.join(" ")));
        }
        s.push('\n');
        for d in &self.details {
            s.push_str("  ");
            s.push_str(d);
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
    /// Names of failed checks, in input order.
    pub failures: Vec<String>,
}

impl Summary {
    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}/{} passed, {} failed, {} n/a\n",
            self.passed, self.total, self.failed, self.not_applicable
        );
        for f in &self.failures {
            s.push_str(&format!("  failed: {f}\n"));
        }
        s
    }
}

pub fn report_merge(verdicts: &[Verdict]) -> Summary {
    let mut s = Summary {
        total: verdicts.len(),
        ..Summary::default()
    };
    for v in verdicts {
        match v.status {
            Status::Pass => s.passed += 1,
            Status::Fail => {
                s.failed += 1;
                s.failures.push(v.check.clone());
            }
            Status::NotApplicable => s.not_applicable += 1,
        }
    }
    s
}
