//! Pass/fail verdicts with re-checkable counterexamples.

use serde::Serialize;

/// A concrete counterexample: the quantified points (as coordinate tuples)
/// and, where the statement quantifies over a scalar, that scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub points: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Witness {
    pub fn points(points: Vec<Vec<u32>>) -> Self {
        Witness { points, scalar: None, detail: None }
    }

    pub fn with_scalar(mut self, a: u32) -> Self {
        self.scalar = Some(a);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    /// Number of quantifier instances examined.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, checked: u64, witness: Option<Witness>) -> Self {
        Verdict { name: name.into(), pass: witness.is_none(), checked, witness }
    }

    pub fn pass(name: impl Into<String>, checked: u64) -> Self {
        Self::new(name, checked, None)
    }

    pub fn fail(name: impl Into<String>, checked: u64, witness: Witness) -> Self {
        Self::new(name, checked, Some(witness))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub verdicts: Vec<Verdict>,
}

impl AxiomReport {
    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.verdicts.extend(other.verdicts);
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}
