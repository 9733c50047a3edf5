//! Self-contained proof certificates.
//!
//! A certificate carries the full presentation, the goal, and a linear
//! proof. Checking one needs nothing but this module, the derivation
//! checker, and (for proofs with evaluation steps) the named algebra from
//! the bundled registry.
//!
//! ```text
//! {
//!   "presentation": {"ops": [{"name", "arity"}…], "axioms": [{"name", "support", "lhs", "rhs"}…]},
//!   "algebra": "nat-add",                       // omitted for constant-free proofs
//!   "goal": {"support": n, "lhs": term, "rhs": term},
//!   "steps": [{"context": term-with-hole | null, "dir": "fwd" | "bwd",
//!              "by": {"axiom": name, "subst": [term…]} | {"eval": {"op": name, "args": [literal…]}}}…],
//!   "meta": {"tool": "…", "note": "…"}
//! }
//! ```
//!
//! Terms are `{"var": i}`, `{"sta": literal}` or `{"app": name, "args": […]}`;
//! a context contains exactly one `{"hole": null}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebras;
use crate::derivation::{check, CheckContext, CheckError};
use crate::linear::{replay, LinStep, LinearDerivation};
use crate::presentation::Presentation;
use crate::term::Goal;

pub const TOOL: &str = concat!("frex ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub tool: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub presentation: Presentation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub goal: Goal,
    pub steps: Vec<LinStep>,
    pub meta: Meta,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Parse(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("check failed at step {step}: {reason}")]
    CheckFailed { step: usize, reason: CheckError },
}

impl Certificate {
    pub fn new(
        presentation: Presentation,
        algebra: Option<String>,
        goal: Goal,
        proof: &LinearDerivation,
        note: impl Into<String>,
    ) -> Self {
        Certificate {
            presentation,
            algebra,
            goal,
            steps: proof.steps.clone(),
            meta: Meta {
                tool: TOOL.to_owned(),
                note: note.into(),
            },
        }
    }

    /// The proof, starting from the goal's left-hand side.
    pub fn proof(&self) -> LinearDerivation {
        LinearDerivation {
            start: self.goal.lhs.clone(),
            steps: self.steps.clone(),
        }
    }

    /// Pretty-printed JSON with a fixed key order and a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("certificates always serialize");
        out.push(b'\n');
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self, CertificateError> {
        serde_json::from_slice(bytes).map_err(|e| CertificateError::Parse(e.to_string()))
    }

    /// Verifies the certificate: every step must be an instance of a
    /// declared axiom (or an evaluation in the named algebra) in some
    /// context, consecutive steps must meet, and the chain must lead from
    /// the goal's left-hand side to its right-hand side.
    pub fn check(&self) -> Result<(), CertificateError> {
        let algebra = match &self.algebra {
            None => None,
            Some(name) => Some(
                algebras::by_name(name)
                    .ok_or_else(|| CertificateError::UnknownAlgebra(name.clone()))?,
            ),
        };
        let at = |step: usize| move |reason: CheckError| CertificateError::CheckFailed { step, reason };
        let ctx = CheckContext::new(self.presentation.clone(), self.goal.support, algebra)
            .map_err(at(0))?;
        ctx.validate(&self.goal.rhs).map_err(at(self.steps.len()))?;

        let proof = self.proof();
        let trace = proof.trace(&ctx).map_err(|e| {
            let step = e.step();
            let crate::linear::ReplayError::Step { source, .. } = e;
            CertificateError::CheckFailed {
                step,
                reason: source,
            }
        })?;
        let end = trace.last().expect("trace includes the start");
        if !ctx.same_term(&self.goal.rhs, end) {
            return Err(CertificateError::CheckFailed {
                step: self.steps.len(),
                reason: CheckError::EndpointMismatch {
                    expected: self.goal.rhs.clone(),
                    got: end.clone(),
                },
            });
        }

        // The tree checker has the final word.
        let tree = replay(&ctx, &proof).map_err(|e| CertificateError::CheckFailed {
            step: e.step(),
            reason: match e {
                crate::linear::ReplayError::Step { source, .. } => source,
            },
        })?;
        check(&ctx, &self.goal.lhs, &self.goal.rhs, &tree).map_err(at(self.steps.len()))
    }
}

/// Parses and checks certificate bytes.
pub fn check_certificate(bytes: &[u8]) -> Result<(), CertificateError> {
    Certificate::parse(bytes)?.check()
}
