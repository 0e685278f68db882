//! Structured outcomes of the construction checks.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub label: String,
    /// Stable identifier of the mathematical statement being checked.
    pub anchor: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Status {
    #[default]
    Complete,
    /// A dimension cap or reduction budget stopped the run early; the claims
    /// listed cover only the part that was computed.
    CapExceeded,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::CapExceeded => "cap-exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub construction: String,
    pub params: Vec<(String, String)>,
    pub claims: Vec<Claim>,
    pub status: Status,
    /// Filled in by callers that have a clock.
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(construction: &str) -> Self {
        VerificationReport { construction: construction.into(), ..Default::default() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn claim(&mut self, label: &str, anchor: &str, pass: bool, witness: impl Into<String>) -> &mut Self {
        self.claims.push(Claim { label: label.into(), anchor: anchor.into(), pass, witness: witness.into() });
        self
    }

    /// Appends the params and claims of `other`, prefixing keys and labels.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for (k, v) in other.params {
            self.params.push((alloc::format!("{prefix}{k}"), v));
        }
        for mut c in other.claims {
            c.label = alloc::format!("{prefix}{}", c.label);
            self.claims.push(c);
        }
        if other.status == Status::CapExceeded {
            self.status = Status::CapExceeded;
        }
    }

    /// True iff every claim holds.
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.construction)?;
        for (k, v) in &self.params {
            writeln!(f, "  {k}: {v}")?;
        }
        for c in &self.claims {
            writeln!(f, "  [{}] {} ({}): {}", if c.pass { "ok" } else { "FAIL" }, c.label, c.anchor, c.witness)?;
        }
        write!(f, "status: {}, pass: {}", self.status.name(), self.pass())
    }
}
