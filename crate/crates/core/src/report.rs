//! Verification reports: named pass/fail entries with witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The check was not run because the input exceeds an exhaustion bound.
    SkippedBound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBound => "skipped-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_note: Option<String>,
}

impl CheckEntry {
    pub fn pass(name: impl Into<String>) -> CheckEntry {
        CheckEntry {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            bound_note: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> CheckEntry {
        CheckEntry {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            bound_note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, note: impl Into<String>) -> CheckEntry {
        CheckEntry {
            name: name.into(),
            status: Status::SkippedBound,
            witness: None,
            bound_note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckEntry {
        self.bound_note = Some(note.into());
        self
    }
}

/// A list of checks about one subject. `overall` is `Fail` exactly when
/// some entry fails; skipped entries do not fail a report on their own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub entries: Vec<CheckEntry>,
    pub overall: Status,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report {
            subject: subject.into(),
            entries: Vec::new(),
            overall: Status::Pass,
        }
    }

    pub fn push(&mut self, entry: CheckEntry) -> &mut CheckEntry {
        if entry.status == Status::Fail {
            self.overall = Status::Fail;
        }
        self.entries.push(entry);
        self.entries.last_mut().unwrap()
    }

    /// Records `name` as passing if `witness` is `None`, failing otherwise.
    pub fn check(&mut self, name: impl Into<String>, witness: Option<String>) -> &mut CheckEntry {
        match witness {
            None => self.push(CheckEntry::pass(name)),
            Some(w) => self.push(CheckEntry::fail(name, w)),
        }
    }

    /// Records `name` from a boolean, building the witness lazily.
    pub fn check_bool(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> &mut CheckEntry {
        self.check(name, if ok { None } else { Some(witness()) })
    }

    /// Records the outcome of a fallible check.
    pub fn check_result<T, E: fmt::Display>(
        &mut self,
        name: impl Into<String>,
        result: &Result<T, E>,
    ) -> &mut CheckEntry {
        self.check(name, result.as_ref().err().map(|e| e.to_string()))
    }

    pub fn skip(&mut self, name: impl Into<String>, note: impl Into<String>) -> &mut CheckEntry {
        self.push(CheckEntry::skipped(name, note))
    }

    /// Appends every entry of `other`, prefixing names with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut entry in other.entries {
            entry.name = format!("{prefix}/{}", entry.name);
            self.push(entry);
        }
    }

    pub fn passed(&self) -> bool {
        self.overall != Status::Fail
    }

    pub fn has_skipped(&self) -> bool {
        self.entries
            .iter()
            .any(|e| e.status == Status::SkippedBound)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.subject, self.overall)?;
        for e in &self.entries {
            write!(f, "  {:<13} {}", e.status.to_string(), e.name)?;
            if let Some(w) = &e.witness {
                write!(f, " — {w}")?;
            }
            if let Some(n) = &e.bound_note {
                write!(f, " [{n}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_tracks_failures_only() {
        let mut r = Report::new("x");
        r.check_bool("a", true, String::new);
        r.skip("b", "n > 12");
        assert_eq!(r.overall, Status::Pass);
        assert!(r.has_skipped());
        r.check_bool("c", false, || "witness".into());
        assert_eq!(r.overall, Status::Fail);
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.entry("c").unwrap().witness.as_deref(), Some("witness"));
    }
}
