use std::fmt;

use serde::Serialize;

use super::SphericalOrder;
use crate::error::OrderError;
use crate::group::{Element, FiniteGroup, Side};
use crate::tuples::{even_permutations, representative, Sign};

/// Default cap on literal enumeration work.
pub const DEFAULT_VERIFY_CAP: u128 = 50_000_000;

/// The conditions a translation-invariant spherical order must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// Members stay members under every even permutation of coordinates.
    EvenPermutationClosure,
    /// A tuple and its transposition are both members iff the tuple has a
    /// repeated coordinate.
    SwapExclusion,
    /// For a member and any `t`, replacing some coordinate by `t` gives a
    /// member.
    Replacement,
    /// A tuple or its transposition is a member.
    SwapTotality,
    LeftInvariance,
    RightInvariance,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::EvenPermutationClosure,
        Axiom::SwapExclusion,
        Axiom::Replacement,
        Axiom::SwapTotality,
        Axiom::LeftInvariance,
        Axiom::RightInvariance,
    ];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::EvenPermutationClosure => "even-permutation closure",
            Axiom::SwapExclusion => "swap exclusion",
            Axiom::Replacement => "replacement",
            Axiom::SwapTotality => "swap totality",
            Axiom::LeftInvariance => "left invariance",
            Axiom::RightInvariance => "right invariance",
        })
    }
}

/// A replayable failure of one axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// `tuple` is a member, `permuted` (an even permutation of it) is not.
    Permutation { tuple: Vec<Element>, permuted: Vec<Element> },
    /// Swapping positions `i` and `j` breaks exclusion or totality.
    Swap { tuple: Vec<Element>, i: usize, j: usize, tuple_member: bool, swapped_member: bool },
    /// `tuple` is a member and no single replacement by `t` is.
    Replacement { tuple: Vec<Element>, t: Element },
    /// `tuple` is a member and its translate by `b` is not.
    Translation { tuple: Vec<Element>, b: Element, side: Side, image: Vec<Element> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "counterexample", rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed(Counterexample),
    /// Not evaluated because an earlier check failed and the caller asked
    /// to stop at the first failure.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Literal when within the cap, class-level otherwise.
    #[default]
    Auto,
    /// Enumerate every tuple of `G^n` (and every `t` for replacement).
    Literal,
    /// Check one canonical arrangement of each chirality class. Repeat
    /// tuples satisfy every condition structurally and are not enumerated.
    ClassLevel,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    pub cap: u128,
    /// Skip replacement values `t` already among the coordinates; such a
    /// replacement always produces a repeat, hence a member.
    pub skip_colliding_replacements: bool,
    pub stop_at_first_failure: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: VerifyMode::Auto,
            cap: DEFAULT_VERIFY_CAP,
            skip_colliding_replacements: true,
            stop_at_first_failure: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// Mode actually used (never `Auto`).
    pub mode: VerifyMode,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Passed)
    }

    pub fn status(&self, axiom: Axiom) -> &CheckStatus {
        &self.checks[axiom.slot()].status
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Failed(_)))
            .map(|c| c.axiom)
            .collect()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            match &check.status {
                CheckStatus::Passed => writeln!(f, "  {:<24} pass", check.axiom.to_string())?,
                CheckStatus::Skipped => writeln!(f, "  {:<24} skipped", check.axiom.to_string())?,
                CheckStatus::Failed(cx) => {
                    writeln!(f, "  {:<24} FAIL {}", check.axiom.to_string(), serde_json::to_string(cx).unwrap_or_default())?
                }
            }
        }
        Ok(())
    }
}

/// Work estimate of literal enumeration: `m^n · max(m, n!/2)`.
pub fn literal_work(m: usize, n: usize) -> u128 {
    let tuples = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let half_factorial = (3..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k));
    tuples.saturating_mul((m as u128).max(half_factorial))
}

pub fn verify_order(group: &FiniteGroup, order: &SphericalOrder) -> Result<AxiomReport, OrderError> {
    verify_order_with(group, order, &VerifyOptions::default())
}

pub fn verify_order_with(
    group: &FiniteGroup,
    order: &SphericalOrder,
    opts: &VerifyOptions,
) -> Result<AxiomReport, OrderError> {
    order.check_group(group)?;
    let work = literal_work(group.order(), order.arity());
    let mode = match opts.mode {
        VerifyMode::Auto if work <= opts.cap => VerifyMode::Literal,
        VerifyMode::Auto => VerifyMode::ClassLevel,
        VerifyMode::Literal if work > opts.cap => {
            return Err(OrderError::CapExceeded { work, cap: opts.cap })
        }
        other => other,
    };
    let mut acc = Accumulator::new(opts.stop_at_first_failure);
    match mode {
        VerifyMode::Literal => literal(group, order, opts, &mut acc),
        _ => class_level(group, order, &mut acc),
    }
    Ok(acc.finish(mode))
}

struct Accumulator {
    results: [Option<Counterexample>; 6],
    stop_early: bool,
}

impl Accumulator {
    fn new(stop_early: bool) -> Self {
        Accumulator { results: Default::default(), stop_early }
    }

    fn open(&self, axiom: Axiom) -> bool {
        self.results[axiom.slot()].is_none()
    }

    fn fail(&mut self, axiom: Axiom, cx: Counterexample) {
        if self.open(axiom) {
            self.results[axiom.slot()] = Some(cx);
        }
    }

    fn done(&self) -> bool {
        (self.stop_early && self.results.iter().any(Option::is_some)) || self.results.iter().all(Option::is_some)
    }

    fn finish(self, mode: VerifyMode) -> AxiomReport {
        let any_failed = self.results.iter().any(Option::is_some);
        let stop_early = self.stop_early;
        let checks = Axiom::ALL
            .iter()
            .zip(self.results)
            .map(|(&axiom, r)| AxiomCheck {
                axiom,
                status: match r {
                    Some(cx) => CheckStatus::Failed(cx),
                    None if stop_early && any_failed => CheckStatus::Skipped,
                    None => CheckStatus::Passed,
                },
            })
            .collect();
        AxiomReport { mode, checks }
    }
}

fn swapped(arr: &[Element], i: usize, j: usize) -> Vec<Element> {
    let mut out = arr.to_vec();
    out.swap(i, j);
    out
}

fn check_swaps(order: &SphericalOrder, arr: &[Element], member: bool, repeat: bool, acc: &mut Accumulator) {
    let n = arr.len();
    for i in 0..n {
        for j in i + 1..n {
            if !acc.open(Axiom::SwapExclusion) && !acc.open(Axiom::SwapTotality) {
                return;
            }
            let other = swapped(arr, i, j);
            let other_member = order.contains(&other);
            let cx = || Counterexample::Swap {
                tuple: arr.to_vec(),
                i,
                j,
                tuple_member: member,
                swapped_member: other_member,
            };
            if (member && other_member) != repeat {
                acc.fail(Axiom::SwapExclusion, cx());
            }
            if !(member || other_member) {
                acc.fail(Axiom::SwapTotality, cx());
            }
        }
    }
}

fn check_replacement(
    group: &FiniteGroup,
    order: &SphericalOrder,
    arr: &[Element],
    skip_colliding: bool,
    acc: &mut Accumulator,
) {
    let mut probe = arr.to_vec();
    for t in group.elements() {
        if !acc.open(Axiom::Replacement) {
            return;
        }
        if skip_colliding && arr.contains(&t) {
            continue;
        }
        let found = (0..arr.len()).any(|i| {
            let saved = probe[i];
            probe[i] = t;
            let hit = order.contains(&probe);
            probe[i] = saved;
            hit
        });
        if !found {
            acc.fail(Axiom::Replacement, Counterexample::Replacement { tuple: arr.to_vec(), t });
        }
    }
}

fn check_invariance(group: &FiniteGroup, order: &SphericalOrder, arr: &[Element], acc: &mut Accumulator) {
    let mut image = vec![0; arr.len()];
    for b in group.elements() {
        for (side, axiom) in [(Side::Left, Axiom::LeftInvariance), (Side::Right, Axiom::RightInvariance)] {
            if !acc.open(axiom) {
                continue;
            }
            for (y, &x) in image.iter_mut().zip(arr) {
                *y = group.translate(x, b, side);
            }
            if !order.contains(&image) {
                acc.fail(axiom, Counterexample::Translation { tuple: arr.to_vec(), b, side, image: image.clone() });
            }
        }
    }
}

fn check_permutations(order: &SphericalOrder, arr: &[Element], perms: &[Vec<usize>], acc: &mut Accumulator) {
    let mut permuted = vec![0; arr.len()];
    for perm in perms {
        if !acc.open(Axiom::EvenPermutationClosure) {
            return;
        }
        for (slot, &p) in permuted.iter_mut().zip(perm) {
            *slot = arr[p];
        }
        if !order.contains(&permuted) {
            acc.fail(
                Axiom::EvenPermutationClosure,
                Counterexample::Permutation { tuple: arr.to_vec(), permuted: permuted.clone() },
            );
        }
    }
}

/// Exhaustive pass over `G^n` in lexicographic order.
fn literal(group: &FiniteGroup, order: &SphericalOrder, opts: &VerifyOptions, acc: &mut Accumulator) {
    let m = group.order();
    let n = order.arity();
    let perms = even_permutations(n);
    let mut arr = vec![0; n];
    loop {
        let member = order.contains(&arr);
        let repeat = crate::tuples::has_repeat(&arr);
        check_swaps(order, &arr, member, repeat, acc);
        if member {
            check_permutations(order, &arr, &perms, acc);
            check_invariance(group, order, &arr, acc);
            check_replacement(group, order, &arr, opts.skip_colliding_replacements, acc);
        }
        if acc.done() || !advance(&mut arr, m) {
            break;
        }
    }
}

/// Odometer step over `0..m` in every coordinate; false once exhausted.
fn advance(arr: &mut [Element], m: usize) -> bool {
    for slot in arr.iter_mut().rev() {
        *slot += 1;
        if *slot < m {
            return true;
        }
        *slot = 0;
    }
    false
}

/// 3-cycles `(0 1 k)` as index maps; they generate the alternating group.
fn alternating_generators(n: usize) -> Vec<Vec<usize>> {
    (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect()
}

fn class_level(group: &FiniteGroup, order: &SphericalOrder, acc: &mut Accumulator) {
    let n = order.arity();
    let gens = alternating_generators(n);
    for (rank, subset) in order.subsets().iter().enumerate() {
        let chosen = order.bit(rank);
        for bit in [Sign::Plus, Sign::Minus] {
            let arr = representative(&subset, bit);
            let member = bit == chosen;
            check_swaps(order, &arr, member, false, acc);
            if member {
                check_permutations(order, &arr, &gens, acc);
                check_invariance(group, order, &arr, acc);
                check_replacement(group, order, &arr, true, acc);
            }
        }
        if acc.done() {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::order::trivial_order;

    fn literal_opts(skip: bool) -> VerifyOptions {
        VerifyOptions { mode: VerifyMode::Literal, skip_colliding_replacements: skip, ..Default::default() }
    }

    fn class_opts() -> VerifyOptions {
        VerifyOptions { mode: VerifyMode::ClassLevel, ..Default::default() }
    }

    fn all_orders(group: &FiniteGroup, n: usize) -> Vec<SphericalOrder> {
        let count = crate::tuples::SubsetIndex::new(group.order(), n).count();
        (0u32..1 << count)
            .map(|mask| {
                let bits = (0..count).map(|r| if mask >> r & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
                SphericalOrder::new(group, n, bits).unwrap()
            })
            .collect()
    }

    #[test]
    fn trivial_order_on_z2_arity_three_passes() {
        let z2 = make_group("Z2").unwrap();
        let report = verify_order_with(&z2, &trivial_order(&z2, 3).unwrap(), &literal_opts(false)).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.mode, VerifyMode::Literal);
    }

    #[test]
    fn literal_cap_is_reported() {
        let g = make_group("Z16").unwrap();
        let k = SphericalOrder::uniform(&g, 8, Sign::Plus).unwrap();
        let err = verify_order_with(&g, &k, &literal_opts(true)).unwrap_err();
        assert!(matches!(err, OrderError::CapExceeded { .. }));
        assert_eq!(verify_order(&g, &k).unwrap().mode, VerifyMode::ClassLevel);
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let k = SphericalOrder::uniform(&make_group("Z5").unwrap(), 3, Sign::Plus).unwrap();
        assert!(matches!(verify_order(&make_group("Z6").unwrap(), &k), Err(OrderError::GroupMismatch { .. })));
    }

    #[test]
    fn representation_gives_structural_axioms() {
        for spec in ["Z4", "Z2xZ2", "Z5", "S3"] {
            let g = make_group(spec).unwrap();
            for n in 2..=3 {
                let count = crate::tuples::SubsetIndex::new(g.order(), n).count();
                if count > 12 {
                    continue;
                }
                for k in all_orders(&g, n) {
                    let r = verify_order_with(&g, &k, &literal_opts(false)).unwrap();
                    for ax in [Axiom::EvenPermutationClosure, Axiom::SwapExclusion, Axiom::SwapTotality] {
                        assert_eq!(r.status(ax), &CheckStatus::Passed, "{spec} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn literal_class_level_and_reduced_replacement_agree() {
        for (spec, n) in [("Z3", 2), ("Z4", 2), ("Z4", 3), ("Z5", 3), ("Z2xZ2", 3), ("Z5", 4), ("Z6", 5), ("S3", 2), ("Z4", 4)] {
            let g = make_group(spec).unwrap();
            for k in all_orders(&g, n) {
                let full = verify_order_with(&g, &k, &literal_opts(false)).unwrap();
                let reduced = verify_order_with(&g, &k, &literal_opts(true)).unwrap();
                let class = verify_order_with(&g, &k, &class_opts()).unwrap();
                assert_eq!(full, reduced, "{spec} n={n} {:?}", k.bits());
                assert_eq!(full.failed_axioms(), class.failed_axioms(), "{spec} n={n} {:?}", k.bits());
            }
        }
    }

    #[test]
    fn linear_orders_that_pass_are_transitive() {
        // Any arity-2 order passing verification is a strict total order
        // on distinct elements. Only the trivial group admits one, so
        // check the relation properties on every assignment that passes
        // everything except invariance.
        for spec in ["Z3", "Z4", "Z2xZ2"] {
            let g = make_group(spec).unwrap();
            for k in all_orders(&g, 2) {
                let r = verify_order_with(&g, &k, &literal_opts(false)).unwrap();
                if r.status(Axiom::Replacement) != &CheckStatus::Passed {
                    continue;
                }
                let m = g.order();
                for a in 0..m {
                    for b in 0..m {
                        for c in 0..m {
                            if a == b || b == c || a == c {
                                continue;
                            }
                            if k.contains(&[a, b]) && k.contains(&[b, c]) {
                                assert!(k.contains(&[a, c]), "{spec}: {a}<{b}<{c}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stop_at_first_failure_marks_rest_skipped() {
        let g = make_group("Z4").unwrap();
        let k = SphericalOrder::uniform(&g, 4, Sign::Plus).unwrap();
        let opts = VerifyOptions { stop_at_first_failure: true, ..literal_opts(true) };
        let r = verify_order_with(&g, &k, &opts).unwrap();
        assert!(!r.passed());
        // both invariance checks fail on the same first tuple
        assert!(!r.failed_axioms().is_empty());
        assert!(r.checks.iter().any(|c| c.status == CheckStatus::Skipped));
    }

    #[test]
    fn work_estimate() {
        assert_eq!(literal_work(3, 2), 27);
        assert_eq!(literal_work(3, 6), 729 * 360);
        assert_eq!(literal_work(10, 10), 10u128.pow(10) * 1_814_400);
    }
}
