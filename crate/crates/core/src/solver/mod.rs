//! Deciding whether a finite group admits an `n`-spherical order invariant
//! under left and right translation.
//!
//! Translations relate the chirality bits of subsets: translating the
//! ascending arrangement of `A` by `b` yields an arrangement of `B` of some
//! parity `p`, so any invariant order has `bit(B) = bit(A) ^ p`. An odd
//! closed walk of such edges rules out every order. Otherwise each
//! connected component has exactly two consistent sign patterns and the
//! remaining question is the replacement condition, which is searched over
//! component signs.

mod certificate;
mod graph;
mod rank;
mod search;

pub use certificate::{
    Certificate, CertificateFile, ComponentMember, CycleStep, ParityCycle, Refutation, ReplacementExhausted,
};
pub use graph::{ConstraintGraph, Edge};
pub use rank::{class_orbits_collide, rank, RankReport};

use crate::error::{OrderError, SolverError};
use crate::group::{Element, FiniteGroup};
use crate::order::{trivial_order, verify_order_with, SphericalOrder, VerifyOptions};
use crate::tuples::{even_permutations, representative};
use search::{ReplacementSearch, SearchOutcome};

/// Default cap on search nodes before giving up as undecided.
pub const DEFAULT_NODE_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub node_cap: u64,
    /// Used to re-verify every witness before it is returned.
    pub verify: VerifyOptions,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { node_cap: DEFAULT_NODE_CAP, verify: VerifyOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `n > |G|`: only repeat tuples, no subsets to orient.
    Trivial,
    Solver,
    /// Exhaustive enumeration by the oracle.
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Orderable { witness: SphericalOrder, method: Method },
    NotOrderable { certificate: Certificate },
}

impl Verdict {
    pub fn is_orderable(&self) -> bool {
        matches!(self, Verdict::Orderable { .. })
    }

    pub fn witness(&self) -> Option<&SphericalOrder> {
        match self {
            Verdict::Orderable { witness, .. } => Some(witness),
            Verdict::NotOrderable { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Orderable { .. } => None,
            Verdict::NotOrderable { certificate } => Some(certificate),
        }
    }
}

pub fn decide(group: &FiniteGroup, n: usize) -> Result<Verdict, SolverError> {
    decide_with(group, n, &SolverOptions::default())
}

pub fn decide_with(group: &FiniteGroup, n: usize, opts: &SolverOptions) -> Result<Verdict, SolverError> {
    if n < 2 {
        return Err(SolverError::ArityTooSmall(n));
    }
    if n > group.order() {
        let witness = trivial_order(group, n)?;
        ensure_valid(group, &witness, opts)?;
        return Ok(Verdict::Orderable { witness, method: Method::Trivial });
    }
    let graph = ConstraintGraph::build(group, n)?;
    if let Some(cycle) = &graph.obstruction {
        return Ok(Verdict::NotOrderable { certificate: Certificate::ParityCycle(cycle.clone()) });
    }
    let search = ReplacementSearch::new(group, &graph, opts.node_cap);
    match search.run() {
        SearchOutcome::Found(values) => {
            let bits = (0..graph.node_count())
                .map(|x| values[graph.component[x]].shift(graph.offset[x]))
                .collect();
            let witness = SphericalOrder::new(group, n, bits)?;
            ensure_valid(group, &witness, opts)?;
            Ok(Verdict::Orderable { witness, method: Method::Solver })
        }
        SearchOutcome::Exhausted(refutations) => {
            let components = graph
                .members()
                .into_iter()
                .map(|members| {
                    members
                        .into_iter()
                        .map(|x| ComponentMember { subset: graph.index.unrank(x), offset: graph.offset[x].is_odd() as u8 })
                        .collect()
                })
                .collect();
            let c = graph.component_count;
            Ok(Verdict::NotOrderable {
                certificate: Certificate::ReplacementExhausted(ReplacementExhausted {
                    component_count: c,
                    assignments_covered: 1u64.checked_shl((c - 1) as u32).unwrap_or(u64::MAX),
                    components,
                    refutations,
                }),
            })
        }
        SearchOutcome::Capped { explored } => Err(SolverError::Undecided { explored, cap: opts.node_cap }),
    }
}

fn ensure_valid(group: &FiniteGroup, witness: &SphericalOrder, opts: &SolverOptions) -> Result<(), SolverError> {
    let report = verify_order_with(group, witness, &opts.verify)?;
    assert!(
        report.passed(),
        "solver produced an order that fails verification on {} n={}:\n{report}",
        group.name(),
        witness.arity()
    );
    Ok(())
}

/// Literal replacement check over every distinct-coordinate member: each
/// arrangement in the chosen class of every subset, against every `t`
/// outside it. Returns the first failing `(tuple, t)`.
pub fn check_replacement(
    group: &FiniteGroup,
    order: &SphericalOrder,
) -> Result<Option<(Vec<Element>, Element)>, OrderError> {
    order.check_group(group)?;
    let perms = even_permutations(order.arity());
    for class in order.classes() {
        let base = class.representative();
        for perm in &perms {
            let tuple: Vec<Element> = perm.iter().map(|&p| base[p]).collect();
            if let Some(t) = replacement_failure(group, order, &tuple) {
                return Ok(Some((tuple, t)));
            }
        }
    }
    Ok(None)
}

/// The same check on one canonical arrangement per chosen class.
pub fn check_replacement_representatives(
    group: &FiniteGroup,
    order: &SphericalOrder,
) -> Result<Option<(Vec<Element>, Element)>, OrderError> {
    order.check_group(group)?;
    for class in order.classes() {
        let tuple = representative(&class.subset, class.bit);
        if let Some(t) = replacement_failure(group, order, &tuple) {
            return Ok(Some((tuple, t)));
        }
    }
    Ok(None)
}

fn replacement_failure(group: &FiniteGroup, order: &SphericalOrder, tuple: &[Element]) -> Option<Element> {
    let mut probe = tuple.to_vec();
    group.elements().filter(|t| !tuple.contains(t)).find(|&t| {
        !(0..tuple.len()).any(|i| {
            let saved = probe[i];
            probe[i] = t;
            let hit = order.membership(&probe).unwrap_or(false);
            probe[i] = saved;
            hit
        })
    })
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::order::verify_order;
    use crate::tuples::Sign;

    fn decide_spec(spec: &str, n: usize) -> Verdict {
        decide(&make_group(spec).unwrap(), n).unwrap()
    }

    #[test]
    fn linear_orders_only_on_trivial_group() {
        assert!(decide_spec("Z1", 2).is_orderable());
        for spec in ["Z2", "Z3", "Z4", "S3", "Z2xZ2"] {
            assert!(!decide_spec(spec, 2).is_orderable(), "{spec}");
        }
    }

    #[test]
    fn cyclic_full_arity() {
        let z4 = decide_spec("Z4", 4);
        assert!(matches!(z4, Verdict::NotOrderable { certificate: Certificate::ParityCycle(_) }));
        assert!(decide_spec("Z5", 5).is_orderable());
        assert!(decide_spec("Z6", 4).is_orderable());
        assert!(!decide_spec("D4", 4).is_orderable());
        assert!(decide_spec("Z2xZ2", 4).is_orderable());
    }

    #[test]
    fn trivial_method_above_order() {
        let v = decide_spec("Z3", 5);
        assert!(matches!(v, Verdict::Orderable { method: Method::Trivial, .. }));
        assert!(matches!(decide(&make_group("Z3").unwrap(), 1), Err(SolverError::ArityTooSmall(1))));
    }

    #[test]
    fn witnesses_and_duals_verify() {
        for (spec, n) in [("Z5", 3), ("Z7", 4), ("Z2xZ4", 5), ("S3", 5), ("D5", 5), ("Z6", 5)] {
            let g = make_group(spec).unwrap();
            let v = decide(&g, n).unwrap();
            let w = v.witness().unwrap_or_else(|| panic!("{spec} n={n} not orderable"));
            assert!(verify_order(&g, w).unwrap().passed());
            assert!(verify_order(&g, &w.dual()).unwrap().passed());
        }
    }

    #[test]
    fn z5_witness_mutation_fails() {
        let g = make_group("Z5").unwrap();
        let w = decide(&g, 3).unwrap().witness().unwrap().clone();
        assert_eq!(check_replacement(&g, &w).unwrap(), None);
        for r in 0..w.bits().len() {
            let flipped = w.with_flipped(r);
            let report = verify_order(&g, &flipped).unwrap();
            assert!(!report.passed());
            let failed = report.failed_axioms();
            assert!(
                failed.iter().any(|a| matches!(
                    a,
                    crate::order::Axiom::Replacement | crate::order::Axiom::LeftInvariance | crate::order::Axiom::RightInvariance
                )),
                "{failed:?}"
            );
        }
    }

    #[test]
    fn replacement_check_modes_agree() {
        for (spec, n) in [("Z5", 3), ("Z6", 4), ("Z4", 3), ("S3", 3), ("Z2xZ2", 3)] {
            let g = make_group(spec).unwrap();
            let count = crate::tuples::SubsetIndex::new(g.order(), n).count();
            for mask in 0u32..(1 << count.min(12)) {
                let bits = (0..count).map(|r| if mask >> (r % 32) & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
                let k = SphericalOrder::new(&g, n, bits).unwrap();
                assert_eq!(
                    check_replacement(&g, &k).unwrap().is_some(),
                    check_replacement_representatives(&g, &k).unwrap().is_some(),
                    "{spec} n={n} mask={mask}"
                );
            }
        }
    }

    #[test]
    fn full_arity_replacement_is_vacuous() {
        let g = make_group("Z4").unwrap();
        let k = SphericalOrder::uniform(&g, 4, Sign::Plus).unwrap();
        assert_eq!(check_replacement(&g, &k).unwrap(), None);
    }

    #[test]
    fn rank_examples() {
        let z3 = make_group("Z3").unwrap();
        let w = decide(&z3, 3).unwrap().witness().unwrap().clone();
        let r = rank(&z3, 3, Some(&w)).unwrap();
        assert_eq!(r, RankReport { class_graph_components: 2, witness_rank: Some(1) });
        let r = rank(&z3, 4, Some(&trivial_order(&z3, 4).unwrap())).unwrap();
        assert_eq!(r, RankReport { class_graph_components: 0, witness_rank: Some(0) });
    }

    #[test]
    fn parity_obstruction_matches_class_orbits() {
        for spec in ["Z4", "Z6", "S3", "D4", "Q8", "Z2xZ2", "Z2xZ4", "Z8"] {
            let g = make_group(spec).unwrap();
            for n in 2..=g.order() {
                let graph = ConstraintGraph::build(&g, n).unwrap();
                assert_eq!(graph.obstruction.is_some(), class_orbits_collide(&g, n), "{spec} n={n}");
            }
        }
    }
}
