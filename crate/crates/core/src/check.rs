//! Pass/fail records shared by the validators and checkers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ore::NcPoly;
use crate::tensor::{Tensor2, Tensor3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unresolved,
}

/// A residual that should have been zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    Poly(NcPoly),
    Tensor2(Tensor2),
    Tensor3(Tensor3),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Poly(p) => p.is_zero(),
            Residual::Tensor2(t) => t.is_zero(),
            Residual::Tensor3(t) => t.is_zero(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Residual::Poly(p) => p.render(names),
            Residual::Tensor2(t) => t.render(names),
            Residual::Tensor3(t) => t.render(names),
        }
    }
}

impl From<NcPoly> for Residual {
    fn from(p: NcPoly) -> Self {
        Residual::Poly(p)
    }
}

impl From<Tensor2> for Residual {
    fn from(t: Tensor2) -> Self {
        Residual::Tensor2(t)
    }
}

impl From<Tensor3> for Residual {
    fn from(t: Tensor3) -> Self {
        Residual::Tensor3(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Rendered nonzero residual, for failures.
    pub witness: Option<String>,
    #[serde(skip)]
    pub residual: Option<Residual>,
    /// The identity being checked.
    pub citation: String,
    pub detail: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, citation: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            residual: None,
            citation: citation.into(),
            detail: detail.into(),
        }
    }

    pub fn fail(
        name: impl Into<String>,
        citation: impl Into<String>,
        detail: impl Into<String>,
        residual: Option<Residual>,
        names: &[String],
    ) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: residual.as_ref().map(|r| r.render(names)),
            residual,
            citation: citation.into(),
            detail: detail.into(),
        }
    }

    pub fn unresolved(name: impl Into<String>, citation: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Unresolved,
            witness: None,
            residual: None,
            citation: citation.into(),
            detail: detail.into(),
        }
    }

    /// Folds a sequence of labelled residual computations: the first nonzero
    /// residual fails the check, an engine error (budget) with no failure
    /// leaves it unresolved.
    pub fn from_residuals<I>(name: &str, citation: &str, names: &[String], cases: I) -> Check
    where
        I: IntoIterator<Item = (String, Result<Residual>)>,
    {
        let mut count = 0usize;
        let mut first_error = None;
        for (label, outcome) in cases {
            count += 1;
            match outcome {
                Ok(r) if r.is_zero() => {}
                Ok(r) => return Check::fail(name, citation, format!("nonzero residual at {label}"), Some(r), names),
                Err(e) => {
                    first_error.get_or_insert(format!("{label}: {e}"));
                }
            }
        }
        match first_error {
            Some(detail) => Check::unresolved(name, citation, detail),
            None => Check::pass(name, citation, format!("{count} residuals vanish")),
        }
    }

    pub fn from_error(name: &str, citation: &str, err: &Error) -> Check {
        Check::unresolved(name, citation, err.to_string())
    }
}

/// An ordered list of checks. Used for tower validation and for the Hopf
/// axiom and extension-identity checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

pub type ValidationReport = CheckReport;
pub type AxiomReport = CheckReport;

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Fail dominates unresolved, which dominates pass.
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Unresolved) {
            Status::Unresolved
        } else {
            Status::Pass
        }
    }
}
