//! Axiom reports. Each check stores the full difference map `lhs − rhs`;
//! a check passes when that map is zero.

use std::fmt;

use serde::Serialize;

use crate::scalar::ScalarExpr;
use crate::tensor::{LinMap, TensorError};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub difference: LinMap,
}

/// One nonzero entry of a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub output: String,
    #[serde(serialize_with = "ser_display")]
    pub value: ScalarExpr,
}

fn ser_display<S: serde::Serializer>(v: &ScalarExpr, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Check {
    /// Compares two maps after dropping ground-field factors from their spaces.
    pub fn equation(name: impl Into<String>, lhs: &LinMap, rhs: &LinMap) -> Result<Check, TensorError> {
        let difference = lhs.strip_ground().sub(&rhs.strip_ground())?;
        Ok(Check {
            name: name.into(),
            difference,
        })
    }

    /// A check whose map must vanish.
    pub fn vanishing(name: impl Into<String>, map: LinMap) -> Check {
        Check {
            name: name.into(),
            difference: map,
        }
    }

    pub fn passed(&self) -> bool {
        self.difference.is_zero()
    }

    pub fn witness(&self) -> Option<Witness> {
        let (i, j, v) = self.difference.first_nonzero()?;
        Some(Witness {
            input: self.difference.domain().basis_label(i),
            output: self.difference.codomain().basis_label(j),
            value: v.clone(),
        })
    }

    pub fn witnesses(&self) -> Vec<Witness> {
        let d = &self.difference;
        let mut out = Vec::new();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let v = d.get(i, j);
                if !v.is_zero() {
                    out.push(Witness {
                        input: d.domain().basis_label(i),
                        output: d.codomain().basis_label(j),
                        value: v.clone(),
                    });
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn equation(&mut self, name: &str, lhs: &LinMap, rhs: &LinMap) -> Result<(), TensorError> {
        self.checks.push(Check::equation(name, lhs, rhs)?);
        Ok(())
    }

    /// Appends another report's checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
    }

    pub fn is_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "subject": self.subject,
            "pass": self.is_pass(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "name": c.name,
                "pass": c.passed(),
                "nonzero_entries": c.difference.nonzero_count(),
                "witness": c.witness(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            match c.witness() {
                None => writeln!(f, "  ok    {}", c.name)?,
                Some(w) => writeln!(
                    f,
                    "  FAIL  {}  ({} nonzero; {} -> {}: {})",
                    c.name,
                    c.difference.nonzero_count(),
                    w.input,
                    w.output,
                    w.value
                )?,
            }
        }
        Ok(())
    }
}
