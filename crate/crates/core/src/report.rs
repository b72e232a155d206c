//! Validation reports with bounded witness lists.

use std::fmt;

use serde::Serialize;

/// Default number of witnesses kept per law.
pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Whether a law is an axiom or a consequence re-checked as a cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Axiom,
    Derived,
}

/// Outcome of exhaustively checking one law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub law: String,
    pub kind: CheckKind,
    /// Meaning of each witness tuple, e.g. `"(x, y, z)"`.
    pub shape: String,
    /// Number of cases examined.
    pub checked: u64,
    /// Number of failing cases (not capped).
    pub violations: u64,
    /// The lexicographically smallest failing cases, at most the cap.
    pub witnesses: Vec<Vec<usize>>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A list of checked laws. Empty violation counts everywhere means the
/// candidate is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_clean(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn violation_count(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }

    /// A derived law failed while every axiom held. For valid inputs this
    /// can only mean an implementation bug.
    pub fn internal_inconsistency(&self) -> bool {
        let axioms_ok = self
            .checks
            .iter()
            .filter(|c| c.kind == CheckKind::Axiom)
            .all(CheckResult::passed);
        let derived_bad = self
            .checks
            .iter()
            .any(|c| c.kind == CheckKind::Derived && !c.passed());
        axioms_ok && derived_bad
    }

    pub fn check(&self, law: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub(crate) fn push(&mut self, law: &str, kind: CheckKind, shape: &str, tally: Tally) {
        self.checks.push(CheckResult {
            law: law.to_string(),
            kind,
            shape: shape.to_string(),
            checked: tally.checked,
            violations: tally.violations,
            witnesses: tally.witnesses,
        });
    }

    /// Appends every check of `other`, prefixing law names with `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for mut c in other.checks {
            c.law = format!("{prefix}{}", c.law);
            self.checks.push(c);
        }
    }

    /// One-line summary of the first failure, for error messages.
    pub fn first_failure(&self) -> Option<String> {
        self.failures().next().map(|c| {
            format!(
                "{} failed {} time(s), e.g. {} = {:?}",
                c.law,
                c.violations,
                c.shape,
                c.witnesses.first().cloned().unwrap_or_default()
            )
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "ok  " } else { "FAIL" };
            let kind = match c.kind {
                CheckKind::Axiom => "",
                CheckKind::Derived => " [derived]",
            };
            writeln!(f, "{status} {}{kind}: {} case(s)", c.law, c.checked)?;
            if !c.passed() {
                writeln!(f, "     {} violation(s); witnesses {}:", c.violations, c.shape)?;
                for w in &c.witnesses {
                    writeln!(f, "       {w:?}")?;
                }
            }
        }
        if self.internal_inconsistency() {
            writeln!(f, "InternalInconsistency: derived law failed while all axioms hold")?;
        }
        Ok(())
    }
}

/// Running count for a single law. Keeps the smallest `cap` witnesses so the
/// final list does not depend on how work was split between threads.
#[derive(Debug, Clone, Default)]
pub(crate) struct Tally {
    pub checked: u64,
    pub violations: u64,
    pub witnesses: Vec<Vec<usize>>,
    cap: usize,
}

impl Tally {
    pub fn new(cap: usize) -> Self {
        Tally {
            cap,
            ..Default::default()
        }
    }

    #[inline]
    pub fn pass(&mut self) {
        self.checked += 1;
    }

    #[inline]
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<usize>) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: Vec<usize>) {
        self.violations += 1;
        if self.cap == 0 {
            return;
        }
        self.witnesses.push(witness);
        if self.witnesses.len() >= 2 * self.cap {
            self.trim();
        }
    }

    fn trim(&mut self) {
        self.witnesses.sort();
        self.witnesses.dedup();
        self.witnesses.truncate(self.cap);
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations += other.violations;
        self.cap = self.cap.max(other.cap);
        self.witnesses.extend(other.witnesses);
        self.trim();
        self
    }

    pub fn finish(mut self) -> Tally {
        self.trim();
        self
    }
}
