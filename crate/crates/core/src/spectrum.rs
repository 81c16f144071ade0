//! Orderability spectra over a bounded arity range, with cross-checks
//! against the closed-form predictions for finite groups.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{SolverError, SpectrumError};
use crate::group::FiniteGroup;
use crate::solver::{decide_with, Method, SolverOptions, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Orderable,
    NotOrderable,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMethod {
    Trivial,
    Solver,
    UndecidedCap,
}

#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub n: usize,
    pub outcome: Outcome,
    pub method: SpectrumMethod,
    /// Full verdict with witness or certificate; absent when undecided.
    pub verdict: Option<Verdict>,
    pub millis: u128,
}

/// Closed-form statements about finite groups the computed spectrum is
/// checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    /// Every `n > |G|` is in the spectrum (only repeat tuples to order).
    AboveOrder,
    /// `2` is in the spectrum iff `|G| = 1`.
    LinearOnlyTrivial,
    /// No even `n` equal to an element order is in the spectrum.
    EvenElementOrder,
    /// Abelian groups are claimed to admit an order of arity `3`.
    AbelianCircular,
    /// For cyclic groups of order `m ≥ 2`, the spectrum is everything
    /// except `2` and the even divisors of `m`.
    CyclicFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub statement: Statement,
    pub n: usize,
    /// Predicted orderability.
    pub predicted: bool,
    /// `None` when the cell is undecided.
    pub observed: Option<bool>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.observed.is_none_or(|o| o == self.predicted)
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub group: String,
    pub bound: usize,
    pub entries: Vec<SpectrumEntry>,
    pub cross_checks: Vec<CrossCheck>,
}

impl SpectrumReport {
    /// Arities decided orderable.
    pub fn members(&self) -> BTreeSet<usize> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Orderable).map(|e| e.n).collect()
    }

    pub fn undecided(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Undecided).map(|e| e.n).collect()
    }

    pub fn disagreements(&self) -> Vec<&CrossCheck> {
        self.cross_checks.iter().filter(|c| !c.agrees()).collect()
    }

    /// Arities no statement makes a prediction about.
    pub fn unasserted(&self) -> Vec<usize> {
        self.entries
            .iter()
            .map(|e| e.n)
            .filter(|&n| !self.cross_checks.iter().any(|c| c.n == n))
            .collect()
    }

    pub fn entry(&self, n: usize) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| e.n == n)
    }
}

pub fn spectrum(group: &FiniteGroup, bound: usize) -> Result<SpectrumReport, SpectrumError> {
    spectrum_with(group, bound, &SolverOptions::default())
}

pub fn spectrum_with(group: &FiniteGroup, bound: usize, opts: &SolverOptions) -> Result<SpectrumReport, SpectrumError> {
    spectrum_resume(group, bound, opts, &[])
}

/// Like [`spectrum_with`], but cells already decided in `previous` (lines
/// for this group with a definite verdict) are taken as is. Their entries
/// carry no verdict.
pub fn spectrum_resume(
    group: &FiniteGroup,
    bound: usize,
    opts: &SolverOptions,
    previous: &[ReportLine],
) -> Result<SpectrumReport, SpectrumError> {
    if bound < 2 {
        return Err(SpectrumError::BoundTooSmall(bound));
    }
    let done = |n: usize| {
        previous
            .iter()
            .rev()
            .find(|l| l.group == group.name() && l.n == n && l.verdict != Outcome::Undecided)
    };
    let entries = (2..=bound)
        .into_par_iter()
        .map(|n| match done(n) {
            Some(line) => Ok(SpectrumEntry {
                n,
                outcome: line.verdict,
                method: line.method,
                verdict: None,
                millis: line.millis,
            }),
            None => decide_cell(group, n, opts),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = SpectrumReport { group: group.name().to_string(), bound, entries, cross_checks: Vec::new() };
    report.cross_checks = cross_checks(group, &report);
    Ok(report)
}

fn decide_cell(group: &FiniteGroup, n: usize, opts: &SolverOptions) -> Result<SpectrumEntry, SpectrumError> {
    let start = Instant::now();
    let (outcome, method, verdict) = match decide_with(group, n, opts) {
        Ok(v) => {
            let method = match &v {
                Verdict::Orderable { method: Method::Trivial, .. } => SpectrumMethod::Trivial,
                _ => SpectrumMethod::Solver,
            };
            let outcome = if v.is_orderable() { Outcome::Orderable } else { Outcome::NotOrderable };
            (outcome, method, Some(v))
        }
        Err(SolverError::Undecided { .. }) => (Outcome::Undecided, SpectrumMethod::UndecidedCap, None),
        Err(e) => return Err(SpectrumError::Report(e.to_string())),
    };
    Ok(SpectrumEntry { n, outcome, method, verdict, millis: start.elapsed().as_millis() })
}

/// `{n ∈ [2, bound] : n ≠ 2 and not (n even and n | m)}`.
pub fn zm_formula(m: usize, bound: usize) -> BTreeSet<usize> {
    (2..=bound).filter(|&n| n != 2 && !(n % 2 == 0 && m % n == 0)).collect()
}

/// Arities predicted absent: even element orders, plus `2` for any
/// nontrivial group.
pub fn exclusion_predictions(group: &FiniteGroup, bound: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = group.element_orders().into_iter().filter(|o| o % 2 == 0).collect();
    if group.order() > 1 {
        out.insert(2);
    }
    out.retain(|&n| (2..=bound).contains(&n));
    out
}

fn cross_checks(group: &FiniteGroup, report: &SpectrumReport) -> Vec<CrossCheck> {
    let m = group.order();
    let observed = |n: usize| {
        report.entry(n).and_then(|e| match e.outcome {
            Outcome::Orderable => Some(true),
            Outcome::NotOrderable => Some(false),
            Outcome::Undecided => None,
        })
    };
    let check = |statement, n, predicted| CrossCheck { statement, n, predicted, observed: observed(n) };
    let mut out = Vec::new();
    for n in (m + 1).max(2)..=report.bound {
        out.push(check(Statement::AboveOrder, n, true));
    }
    out.push(check(Statement::LinearOnlyTrivial, 2, m == 1));
    for n in exclusion_predictions(group, report.bound) {
        if n != 2 || group.element_orders().contains(&2) {
            out.push(check(Statement::EvenElementOrder, n, false));
        }
    }
    if group.is_abelian() && report.bound >= 3 {
        out.push(check(Statement::AbelianCircular, 3, true));
    }
    if group.is_cyclic() && m >= 2 {
        let formula = zm_formula(m, report.bound);
        for n in 2..=report.bound {
            out.push(check(Statement::CyclicFormula, n, formula.contains(&n)));
        }
    }
    out
}

/// Arities orderable for the supergroup but not for the subgroup; a
/// restriction of an invariant order to a subgroup is again one, so this
/// should be empty.
pub fn monotonicity_violations(sub: &SpectrumReport, sup: &SpectrumReport) -> Vec<usize> {
    let sub_members = sub.members();
    sup.members()
        .into_iter()
        .filter(|n| sub.entry(*n).is_some_and(|e| e.outcome != Outcome::Undecided) && !sub_members.contains(n))
        .collect()
}

/// One line of the JSON-lines report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportLine {
    pub group: String,
    pub n: usize,
    pub verdict: Outcome,
    pub method: SpectrumMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub millis: u128,
    /// Path of the witness or certificate file, when one was written.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub artifact: Option<String>,
}

impl ReportLine {
    pub fn from_entry(group: &str, entry: &SpectrumEntry, artifact: Option<String>) -> Self {
        ReportLine {
            group: group.to_string(),
            n: entry.n,
            verdict: entry.outcome,
            method: entry.method,
            certificate: entry
                .verdict
                .as_ref()
                .and_then(Verdict::certificate)
                .map(|c| c.kind().to_string()),
            millis: entry.millis,
            artifact,
        }
    }
}

pub fn read_report(path: &Path) -> Result<Vec<ReportLine>, SpectrumError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(path).map_err(|e| SpectrumError::Report(e.to_string()))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| SpectrumError::Report(format!("line {}: {e}", i + 1))))
        .collect()
}

pub fn render_report(lines: &[ReportLine]) -> String {
    lines
        .iter()
        .map(|l| serde_json::to_string(l).expect("report line serializes") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn formula_instances() {
        assert_eq!(zm_formula(4, 8), set(&[3, 5, 6, 7, 8]));
        assert_eq!(zm_formula(5, 6), set(&[3, 4, 5, 6]));
        assert_eq!(zm_formula(12, 12), set(&[3, 5, 7, 8, 9, 10, 11]));
    }

    #[test]
    fn exclusion_examples() {
        assert_eq!(exclusion_predictions(&make_group("Z4").unwrap(), 10), set(&[2, 4]));
        assert_eq!(exclusion_predictions(&make_group("Z2xZ2").unwrap(), 10), set(&[2]));
        assert_eq!(exclusion_predictions(&make_group("S3").unwrap(), 8), set(&[2]));
        assert_eq!(exclusion_predictions(&make_group("Z1").unwrap(), 8), set(&[]));
    }

    #[test]
    fn small_spectra() {
        let z2 = spectrum(&make_group("Z2").unwrap(), 8).unwrap();
        assert_eq!(z2.members(), set(&[3, 4, 5, 6, 7, 8]));
        let z4 = spectrum(&make_group("Z4").unwrap(), 8).unwrap();
        assert_eq!(z4.members(), set(&[3, 5, 6, 7, 8]));
        let z6 = spectrum(&make_group("Z6").unwrap(), 10).unwrap();
        assert_eq!(z6.members(), set(&[3, 4, 5, 7, 8, 9, 10]));
        assert!(z6.disagreements().is_empty());
        let z1 = spectrum(&make_group("Z1").unwrap(), 5).unwrap();
        assert_eq!(z1.members(), set(&[2, 3, 4, 5]));
        assert!(z1.entries.iter().all(|e| e.method == SpectrumMethod::Trivial));
    }

    #[test]
    fn trivial_method_exactly_above_order() {
        let r = spectrum(&make_group("S3").unwrap(), 9).unwrap();
        for e in &r.entries {
            assert_eq!(e.method == SpectrumMethod::Trivial, e.n > 6, "n={}", e.n);
        }
        assert_eq!(r.entries.len(), 8);
    }

    #[test]
    fn bound_guard() {
        assert_eq!(spectrum(&make_group("Z3").unwrap(), 1).unwrap_err(), SpectrumError::BoundTooSmall(1));
    }

    #[test]
    fn resume_keeps_previous_cells() {
        let g = make_group("Z4").unwrap();
        let first = spectrum(&g, 5).unwrap();
        let lines: Vec<_> = first.entries.iter().map(|e| ReportLine::from_entry(g.name(), e, None)).collect();
        let again = spectrum_resume(&g, 7, &SolverOptions::default(), &lines).unwrap();
        assert_eq!(again.members(), set(&[3, 5, 6, 7]));
        assert!(again.entry(4).unwrap().verdict.is_none());
        assert!(again.entry(6).unwrap().verdict.is_some());
    }

    #[test]
    fn report_lines_round_trip() {
        let g = make_group("Z4").unwrap();
        let r = spectrum(&g, 5).unwrap();
        let lines: Vec<_> = r.entries.iter().map(|e| ReportLine::from_entry(g.name(), e, None)).collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        std::fs::write(&path, render_report(&lines)).unwrap();
        assert_eq!(read_report(&path).unwrap(), lines);
        assert_eq!(lines[2].certificate.as_deref(), Some("parity_cycle"));
    }
}
