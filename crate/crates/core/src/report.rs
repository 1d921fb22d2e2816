//! Check results: a verdict plus every failing index tuple with its residual.

use std::fmt::Write as _;

use crate::linalg::Tensor;
use crate::scalar::{ParamRing, Scalar};

#[derive(Clone, Debug)]
pub struct Failure {
    pub at: Vec<usize>,
    pub residual: Scalar,
}

#[derive(Clone, Debug)]
pub struct Section {
    pub name: String,
    pub failures: Vec<Failure>,
    /// Informational sections are reported but do not affect the verdict.
    pub informational: bool,
}

impl Section {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub checker: String,
    pub sections: Vec<Section>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(checker: impl Into<String>) -> Self {
        CheckReport {
            checker: checker.into(),
            sections: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records `residual`'s nonzero entries as the failures of a new section.
    pub fn residual(&mut self, name: impl Into<String>, residual: &Tensor) -> bool {
        let failures: Vec<Failure> = residual
            .nonzero_entries()
            .map(|(at, v)| Failure {
                at,
                residual: v.clone(),
            })
            .collect();
        let ok = failures.is_empty();
        self.sections.push(Section {
            name: name.into(),
            failures,
            informational: false,
        });
        ok
    }

    /// Records `lhs - rhs`.
    pub fn equation(&mut self, name: impl Into<String>, lhs: &Tensor, rhs: &Tensor) -> bool {
        let diff = lhs.sub(rhs).expect("equation sides share a shape");
        self.residual(name, &diff)
    }

    pub fn informational(&mut self, name: impl Into<String>, residual: &Tensor) -> bool {
        let ok = self.residual(name, residual);
        self.sections.last_mut().unwrap().informational = true;
        ok
    }

    /// A single boolean condition without an index structure.
    pub fn condition(&mut self, name: impl Into<String>, holds: bool) -> bool {
        let failures = if holds {
            Vec::new()
        } else {
            vec![Failure {
                at: Vec::new(),
                residual: Scalar::one(),
            }]
        };
        self.sections.push(Section {
            name: name.into(),
            failures,
            informational: false,
        });
        holds
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends another report's sections, prefixed with its checker name.
    pub fn absorb(&mut self, other: CheckReport) {
        for mut s in other.sections {
            s.name = format!("{}: {}", other.checker, s.name);
            self.sections.push(s);
        }
        self.notes.extend(other.notes);
    }

    pub fn verdict(&self) -> bool {
        self.sections.iter().all(|s| s.informational || s.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = (&Section, &Failure)> {
        self.sections
            .iter()
            .filter(|s| !s.informational)
            .flat_map(|s| s.failures.iter().map(move |f| (s, f)))
    }

    pub fn first_failure(&self) -> Option<(&Section, &Failure)> {
        self.failures().next()
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    /// Human-readable multi-line rendering.
    pub fn render(&self, ring: &ParamRing) -> String {
        let mut out = String::new();
        let verdict = if self.verdict() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{}: {}", self.checker, verdict);
        for s in &self.sections {
            let tag = match (s.passed(), s.informational) {
                (true, _) => "ok",
                (false, true) => "note",
                (false, false) => "FAILED",
            };
            let _ = writeln!(out, "  [{tag}] {}", s.name);
            for f in &s.failures {
                let _ = writeln!(out, "      at {:?}: {}", f.at, ring.print(&f.residual));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

/// `i,j,k` rendering used by the machine-readable report lines.
pub fn format_indices(at: &[usize]) -> String {
    at.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}
