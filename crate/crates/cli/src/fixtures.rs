//! Golden tables of multiplicity tuples.
//!
//! The files hold the tables exactly as printed. For `d >= 7` the printed
//! tables leave out the all-ones tuple and the tuples of length `d - 1`
//! with a single 2 in positions `2..=d-2`; [`Fixture::expanded`] adds them
//! back.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub dimension: u32,
    pub profiles: Vec<Vec<u32>>,
    pub total: usize,
}

#[derive(Debug)]
pub enum FixtureError {
    Io(std::io::Error),
    Parse(serde_json::Error),
    Invalid(String),
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureError::Io(e) => write!(f, "cannot read fixture: {e}"),
            FixtureError::Parse(e) => write!(f, "malformed fixture: {e}"),
            FixtureError::Invalid(s) => write!(f, "invalid fixture: {s}"),
        }
    }
}

impl std::error::Error for FixtureError {}

/// Tuples left out of the printed tables.
pub fn omitted_tuples(d: u32) -> Vec<Vec<u32>> {
    if d < 7 {
        return Vec::new();
    }
    let mut out = vec![vec![1; d as usize]];
    for pos in 1..(d as usize - 2) {
        let mut t = vec![1; d as usize - 1];
        t[pos] = 2;
        out.push(t);
    }
    out
}

impl Fixture {
    pub fn load(path: &Path) -> Result<Self, FixtureError> {
        let text = std::fs::read_to_string(path).map_err(FixtureError::Io)?;
        let f: Fixture = serde_json::from_str(&text).map_err(FixtureError::Parse)?;
        for p in &f.profiles {
            if p.iter().sum::<u32>() != f.dimension || p.contains(&0) {
                return Err(FixtureError::Invalid(format!(
                    "{p:?} is not a composition of {}",
                    f.dimension
                )));
            }
        }
        Ok(f)
    }

    /// Printed tuples that occur more than once.
    pub fn duplicates(&self) -> Vec<Vec<u32>> {
        let mut seen = BTreeSet::new();
        let mut dups = BTreeSet::new();
        for p in &self.profiles {
            if !seen.insert(p.clone()) {
                dups.insert(p.clone());
            }
        }
        dups.into_iter().collect()
    }

    /// Printed tuples together with the omitted ones.
    pub fn expanded(&self) -> BTreeSet<Vec<u32>> {
        let mut s: BTreeSet<Vec<u32>> = self.profiles.iter().cloned().collect();
        s.extend(omitted_tuples(self.dimension));
        s
    }
}

/// Differences between an enumeration and a fixture.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureReport {
    pub dimension: u32,
    pub stated_total: usize,
    pub fixture_count: usize,
    pub emitted_count: usize,
    pub duplicates: Vec<Vec<u32>>,
    pub missing: Vec<Vec<u32>>,
    pub unexpected: Vec<Vec<u32>>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.duplicates.is_empty()
            && self.missing.is_empty()
            && self.unexpected.is_empty()
            && self.emitted_count == self.stated_total
            && self.fixture_count == self.stated_total
    }
}

pub fn compare(fixture: &Fixture, emitted: &[Vec<u32>]) -> FixtureReport {
    let want = fixture.expanded();
    let got: BTreeSet<Vec<u32>> = emitted.iter().cloned().collect();
    FixtureReport {
        dimension: fixture.dimension,
        stated_total: fixture.total,
        fixture_count: want.len(),
        emitted_count: got.len(),
        duplicates: fixture.duplicates(),
        missing: want.difference(&got).cloned().collect(),
        unexpected: got.difference(&want).cloned().collect(),
    }
}

fn fmt_tuple(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "fixture check d={}: {verdict} (stated total {}, fixture after expansion {}, emitted {})",
            self.dimension, self.stated_total, self.fixture_count, self.emitted_count
        )?;
        for t in &self.duplicates {
            writeln!(f, "  duplicated in fixture: {}", fmt_tuple(t))?;
        }
        for t in &self.missing {
            writeln!(f, "  in fixture, not emitted: {}", fmt_tuple(t))?;
        }
        for t in &self.unexpected {
            writeln!(f, "  emitted, not in fixture: {}", fmt_tuple(t))?;
        }
        Ok(())
    }
}
