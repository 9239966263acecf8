//! Verdicts shared by all verifiers.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "failed")]
    Failed,
    /// The statement's hypotheses do not hold for this input; nothing was checked.
    #[serde(rename = "hypotheses_not_met")]
    HypothesesNotMet,
    /// Hypotheses hold but a standing assumption of the statement (checked directly) does not.
    #[serde(rename = "out_of_scope")]
    OutOfScope,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Verified
        } else {
            Verdict::Failed
        }
    }

    pub fn is_verified(self) -> bool {
        self == Verdict::Verified
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Failed => "failed",
            Verdict::HypothesesNotMet => "hypotheses not met",
            Verdict::OutOfScope => "out of scope",
        })
    }
}

/// One named boolean check inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, holds: bool) -> Check {
        Check {
            name: name.into(),
            holds,
            detail: None,
        }
    }

    pub fn with_detail(name: &str, holds: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            holds,
            detail: Some(detail.into()),
        }
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}
