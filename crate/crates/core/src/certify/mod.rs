//! Certificates: exact identities, coefficient positivity, vanishing orders,
//! monotonicity compositions and numeric scans.
//!
//! Numeric certificates are second-class evidence. They record their grid
//! and tolerance and are marked as sanity checks in the report.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub mod harder;
pub mod identities;
pub mod pairs;
pub mod scans;
pub mod suites;

pub use pairs::{IneqPair, PairName};
pub use suites::{run_suite, Report, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    ExactIdentity,
    CoefficientPositivity,
    VanishingOrder,
    Monotonicity,
    NumericScan,
    ClosedFormBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub kind: Kind,
    pub verdict: Verdict,
    /// Plain description of the statement being checked.
    pub anchor: String,
    pub evidence: Value,
}

pub(crate) const NUMERIC_NOTE: &str = "numeric sanity check on a finite grid; not a proof";

impl Certificate {
    pub fn new(name: String, kind: Kind, verdict: Verdict, anchor: &str, mut evidence: Value) -> Self {
        if kind == Kind::NumericScan {
            if let Value::Object(map) = &mut evidence {
                map.insert("note".into(), json!(NUMERIC_NOTE));
            }
        }
        Self { name, kind, verdict, anchor: anchor.to_string(), evidence }
    }

    pub fn exact_identity(name: String, anchor: &str, ok: bool, residual: String) -> Self {
        Self::new(name, Kind::ExactIdentity, ok.into(), anchor, json!({ "residual": residual }))
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn is_numeric(&self) -> bool {
        self.kind == Kind::NumericScan
    }
}

/// Combines sub-certificates: pass iff all pass, inconclusive if any is
/// inconclusive and none fails.
pub(crate) fn combined_verdict(parts: &[Certificate]) -> Verdict {
    if parts.iter().any(|c| c.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if parts.iter().any(|c| c.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    }
}
