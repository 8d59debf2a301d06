//! Verification reports: one case per checked identity instance.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Display) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub params: Params,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
}

impl Case {
    /// Compares two values; both sides are kept in the record.
    pub fn values<T: PartialEq + Display>(id: &str, params: Params, lhs: &T, rhs: &T) -> Self {
        Self {
            id: id.to_string(),
            params,
            pass: lhs == rhs,
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            skipped: false,
        }
    }

    /// Compares two values; both sides are recorded only on failure.
    pub fn identity<T: PartialEq + Display>(id: &str, params: Params, lhs: &T, rhs: &T) -> Self {
        let pass = lhs == rhs;
        Self {
            id: id.to_string(),
            params,
            pass,
            lhs: (!pass).then(|| lhs.to_string()),
            rhs: (!pass).then(|| rhs.to_string()),
            skipped: false,
        }
    }

    pub fn check(id: &str, params: Params, pass: bool, detail: Option<String>) -> Self {
        Self { id: id.to_string(), params, pass, lhs: detail, rhs: None, skipped: false }
    }

    /// An instance the identity does not apply to (pole, excluded index).
    pub fn skip(id: &str, params: Params, reason: impl Display) -> Self {
        Self {
            id: id.to_string(),
            params,
            pass: true,
            lhs: Some(reason.to_string()),
            rhs: None,
            skipped: true,
        }
    }

    /// A construction error is itself a failed case.
    pub fn error(id: &str, params: Params, err: impl Display) -> Self {
        Self { id: id.to_string(), params, pass: false, lhs: Some(format!("error: {err}")), rhs: None, skipped: false }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub failed: usize,
    #[serde(default)]
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Self { suite: suite.to_string(), cases: Vec::new(), summary: Summary::default() }
    }

    pub fn from_cases(suite: &str, cases: impl IntoIterator<Item = Case>) -> Self {
        let mut r = Self::new(suite);
        r.extend(cases);
        r
    }

    pub fn push(&mut self, case: Case) {
        self.summary.total += 1;
        if !case.pass {
            self.summary.failed += 1;
        }
        if case.skipped {
            self.summary.skipped += 1;
        }
        self.cases.push(case);
    }

    pub fn extend(&mut self, cases: impl IntoIterator<Item = Case>) {
        for c in cases {
            self.push(c);
        }
    }

    /// Appends the cases of another report, keeping this report's suite name.
    pub fn merge(&mut self, other: Report) {
        self.extend(other.cases);
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
