//! Pass/fail records shared by every checker.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Named coordinates of the worst sample seen by a check, e.g. `p`, `lambda`, `x`.
pub type Witness = BTreeMap<String, Vec<f64>>;

/// Numerical tolerances.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Tolerances {
    /// Closed form against closed form.
    pub exact: f64,
    /// Anything that passes through a grid convolution.
    pub grid: f64,
    /// Sibley distance bisection.
    pub metric: f64,
}

impl Tolerances {
    pub const EXACT: f64 = 1e-9;
    pub const GRID: f64 = 1e-3;
    pub const METRIC: f64 = 1e-4;
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { exact: Self::EXACT, grid: Self::GRID, metric: Self::METRIC }
    }
}

/// One axiom or property tested over many samples.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Largest violation (or deviation) observed.
    pub worst: f64,
    pub tolerance: f64,
    pub samples: usize,
    /// `"exact"` or `"grid"` when the check evaluated triangle functions.
    pub path: Option<String>,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: true,
            worst: 0.0,
            tolerance,
            samples: 0,
            path: None,
            witness: None,
        }
    }

    pub fn with_path(mut self, path: impl Into<String>) -> Self {
        self.path = Some(path.into());
        self
    }

    /// Record one sample's violation; keeps the worst witness.
    pub fn record(&mut self, violation: f64, witness: Witness) {
        self.observe(violation, || witness);
    }

    /// Record a sample with a lazily-built witness.
    pub fn observe(&mut self, violation: f64, witness: impl FnOnce() -> Witness) {
        self.samples += 1;
        let v = if violation.is_nan() { f64::INFINITY } else { violation };
        if v > self.worst {
            self.worst = v;
            self.witness = Some(witness());
        }
    }

    /// Fix the verdict from the worst violation.
    pub fn finish(&mut self) -> bool {
        self.passed = self.worst <= self.tolerance;
        if self.passed {
            self.witness = None;
        }
        self.passed
    }
}

/// A list of checks plus free-form notes.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First failing check.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub(crate) fn witness(entries: &[(&str, &[f64])]) -> Witness {
    entries.iter().map(|(k, v)| (String::from(*k), v.to_vec())).collect()
}
