//! Search over component signs for an assignment satisfying the
//! replacement condition.
//!
//! Once translation parities are consistent, a member tuple `x` of subset
//! `A` and a fresh `t` give one clause: replacing coordinate `i` of `x` by
//! `t` must land in the order for some `i`. Whether the replaced tuple is a
//! member depends only on the class of `x`, so one clause per
//! `(A, sign of A, t)` covers every member arrangement.

use super::certificate::Refutation;
use super::graph::ConstraintGraph;
use crate::group::{Element, FiniteGroup};
use crate::tuples::{inversion_parity, representative, Sign};

#[derive(Debug, Clone)]
struct Clause {
    subset: usize,
    sign: Sign,
    t: Element,
    /// `(subset, required sign)`; the clause holds if any literal holds.
    literals: Vec<(usize, Sign)>,
}

#[derive(Debug, Clone)]
pub(crate) enum SearchOutcome {
    /// Component values, component `0` first.
    Found(Vec<Sign>),
    Exhausted(Vec<Refutation>),
    Capped { explored: u64 },
}

pub(crate) struct ReplacementSearch<'a> {
    graph: &'a ConstraintGraph,
    clauses: Vec<Clause>,
    /// Clauses indexed by the highest component they mention.
    by_trigger: Vec<Vec<usize>>,
    node_cap: u64,
}

impl<'a> ReplacementSearch<'a> {
    pub(crate) fn new(group: &FiniteGroup, graph: &'a ConstraintGraph, node_cap: u64) -> Self {
        let index = &graph.index;
        let mut clauses = Vec::new();
        let mut probe = Vec::with_capacity(graph.n);
        for (a, subset) in index.iter().enumerate() {
            for t in group.elements().filter(|t| !subset.contains(t)) {
                let shifts: Vec<_> = (0..subset.len())
                    .map(|i| {
                        probe.clear();
                        probe.extend_from_slice(&subset);
                        probe[i] = t;
                        (index.rank_unsorted(&probe), inversion_parity(&probe))
                    })
                    .collect();
                for sign in [Sign::Plus, Sign::Minus] {
                    let literals = shifts.iter().map(|&(b, p)| (b, sign.shift(p))).collect();
                    clauses.push(Clause { subset: a, sign, t, literals });
                }
            }
        }
        let mut by_trigger = vec![Vec::new(); graph.component_count];
        for (k, clause) in clauses.iter().enumerate() {
            let top = clause
                .literals
                .iter()
                .map(|&(b, _)| graph.component[b])
                .chain(std::iter::once(graph.component[clause.subset]))
                .max()
                .expect("clause mentions a subset");
            by_trigger[top].push(k);
        }
        ReplacementSearch { graph, clauses, by_trigger, node_cap }
    }

    fn bit(&self, values: &[Sign], subset: usize) -> Sign {
        values[self.graph.component[subset]].shift(self.graph.offset[subset])
    }

    fn violated(&self, values: &[Sign], depth: usize) -> Option<&Clause> {
        self.by_trigger[depth].iter().map(|&k| &self.clauses[k]).find(|c| {
            self.bit(values, c.subset) == c.sign && c.literals.iter().all(|&(b, s)| self.bit(values, b) != s)
        })
    }

    /// Depth-first over components in order, component `0` pinned to `+`,
    /// `+` tried before `-`. The first full assignment found is the
    /// colex-least one in that order.
    pub(crate) fn run(&self) -> SearchOutcome {
        let c = self.graph.component_count;
        let mut values = Vec::with_capacity(c);
        let mut refutations = Vec::new();
        let mut explored = 0u64;
        match self.descend(&mut values, &mut refutations, &mut explored) {
            Step::Found => SearchOutcome::Found(values),
            Step::Exhausted => SearchOutcome::Exhausted(refutations),
            Step::Capped => SearchOutcome::Capped { explored },
        }
    }

    fn descend(&self, values: &mut Vec<Sign>, refutations: &mut Vec<Refutation>, explored: &mut u64) -> Step {
        let depth = values.len();
        if depth == self.graph.component_count {
            return Step::Found;
        }
        let choices: &[Sign] = if depth == 0 { &[Sign::Plus] } else { &[Sign::Plus, Sign::Minus] };
        for &choice in choices {
            *explored += 1;
            if *explored > self.node_cap {
                return Step::Capped;
            }
            values.push(choice);
            if let Some(clause) = self.violated(values, depth) {
                refutations.push(Refutation {
                    prefix: values.clone(),
                    tuple: representative(&self.graph.index.unrank(clause.subset), clause.sign),
                    t: clause.t,
                });
            } else {
                match self.descend(values, refutations, explored) {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
            values.pop();
        }
        Step::Exhausted
    }
}

enum Step {
    Found,
    Exhausted,
    Capped,
}
