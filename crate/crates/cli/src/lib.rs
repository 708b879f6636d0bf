//! Report plumbing and the batch suite shared by the `svjack` binary and the
//! acceptance target.

use serde_json::{json, Value};

pub mod suite;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "svjack-report/1";

/// Exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Outcome of one invocation.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub status: suite::Status,
    pub result: Value,
    /// `(kind, message)` of the first failure.
    pub error: Option<(String, String)>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let error = self.error.as_ref().map(|(k, m)| json!({ "kind": k, "message": m }));
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "status": self.status.as_str(),
            "result": self.result,
            "error": error,
        })
    }

    /// Keys are sorted by `serde_json`'s map, so equal reports serialize to
    /// equal bytes.
    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("values are finite") + "\n"
    }
}

/// Sorts an error into a usage problem or a verification failure.
pub fn classify(e: &svjack::Error) -> (&'static str, i32) {
    use svjack::Error::*;
    match e {
        Parity { .. } => ("parity", EXIT_USAGE),
        Invalid(_) => ("invalid", EXIT_USAGE),
        BudgetExceeded(_) => ("budget", EXIT_USAGE),
        Inconclusive(_) => ("inconclusive", EXIT_FAIL),
        Kernel(_) => ("kernel", EXIT_FAIL),
        KernelDimension { .. } => ("kernel-dimension", EXIT_FAIL),
        DegenerateEigenvalue { .. } | Degeneracy(_) => ("degeneracy", EXIT_FAIL),
        Mismatch(_) => ("mismatch", EXIT_FAIL),
        NonzeroResult(_) => ("nonzero", EXIT_FAIL),
        FactorMismatch(_) => ("factor-mismatch", EXIT_FAIL),
        ProportionalityFailure(_) => ("proportionality", EXIT_FAIL),
        Pole(_) => ("pole", EXIT_FAIL),
        Truncation(_) => ("truncation", EXIT_FAIL),
        NonpolynomialResult(_) => ("nonpolynomial", EXIT_FAIL),
        RecursionViolation(_) => ("recursion", EXIT_FAIL),
    }
}
