//! Named pass/fail records shared by every verifier.

use serde::Serialize;

/// One named identity family with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
    /// Identities that follow from the axioms or from a theorem; a failure here points at
    /// corrupted data or a bug rather than at a non-axiomatic input.
    pub consequence: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CheckList {
    pub checks: Vec<Check>,
}

impl CheckList {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Whether all checks that are not consequences pass.
    pub fn axioms_passed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| !c.consequence)
            .all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Record an axiom-level check; `witness` is `None` on success.
    pub fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
            consequence: false,
        });
    }

    /// Record a check whose failure would contradict a theorem.
    pub fn push_consequence(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
            consequence: true,
        });
    }

    pub fn push_bool(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.push_consequence(name, if ok { None } else { Some(witness()) });
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckList) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }
}
