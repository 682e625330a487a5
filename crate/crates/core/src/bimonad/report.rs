use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::Scalar;
use crate::tensorexpr::TensorMap;

/// Where two sides of a failing equation first disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The equation (within the entry) that failed.
    pub equation: String,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub id: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Informational entries are reported but never make a report fail.
    pub gating: bool,
}

impl AxiomEntry {
    pub fn pass(id: &str) -> Self {
        AxiomEntry { id: id.to_string(), holds: true, witness: None, gating: true }
    }

    pub fn fail(id: &str, equation: &str, row: usize, col: usize) -> Self {
        AxiomEntry {
            id: id.to_string(),
            holds: false,
            witness: Some(Witness { equation: equation.to_string(), row, col }),
            gating: true,
        }
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

/// One equation `lhs = rhs` inside an entry.
pub struct Equation<T: Scalar> {
    pub label: String,
    pub lhs: TensorMap<T>,
    pub rhs: TensorMap<T>,
}

impl<T: Scalar> Equation<T> {
    pub fn new(label: &str, lhs: TensorMap<T>, rhs: TensorMap<T>) -> Self {
        Equation { label: label.to_string(), lhs, rhs }
    }
}

/// An entry holds iff every equation holds; the witness names the first failure.
pub fn entry<T: Scalar>(id: &str, equations: Vec<Equation<T>>) -> AxiomEntry {
    for eq in &equations {
        if let Some((row, col)) = eq.lhs.first_difference(&eq.rhs) {
            return AxiomEntry::fail(id, &eq.label, row, col);
        }
    }
    AxiomEntry::pass(id)
}

pub(crate) fn single<T: Scalar>(id: &str, label: &str, lhs: TensorMap<T>, rhs: TensorMap<T>) -> AxiomEntry {
    entry(id, vec![Equation::new(label, lhs, rhs)])
}

pub(crate) type Check<'a> = Box<dyn Fn() -> AxiomEntry + Send + Sync + 'a>;

/// Evaluate independent checks, in parallel when enabled; order is preserved.
pub(crate) fn run_checks(checks: Vec<Check<'_>>) -> AxiomReport {
    #[cfg(feature = "parallel")]
    let entries = {
        use rayon::prelude::*;
        checks.par_iter().map(|c| c()).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let entries = checks.iter().map(|c| c()).collect();
    AxiomReport { entries }
}

/// Ordered list of check results.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, e: AxiomEntry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.entries.extend(other.entries);
    }

    /// True when every gating entry holds.
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds || !e.gating)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| !e.holds && e.gating)
    }

    pub fn failed_ids(&self) -> Vec<String> {
        self.failures().map(|e| e.id.clone()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Whether the named entry exists and holds.
    pub fn holds(&self, id: &str) -> bool {
        self.get(id).is_some_and(|e| e.holds)
    }

    /// `Ok` if all gating entries hold, otherwise the first failing id.
    pub fn require(&self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(e) => Err(Error::PrerequisiteAxiomFailed(e.id.clone())),
        }
    }
}
