//! Propagating chirality bits from a seed along translations.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use super::SphericalOrder;
use crate::error::OrderError;
use crate::group::{FiniteGroup, Side};
use crate::tuples::{inversion_parity, Sign};

/// `(x, y, z)` lies in the cyclic closure of the natural order:
/// `x<y<z`, `y<z<x` or `z<x<y`.
pub fn cyclically_ordered(x: i64, y: i64, z: i64) -> bool {
    (x < y && y < z) || (y < z && z < x) || (z < x && x < y)
}

/// Where the closure runs: a finite group (left and right translations by
/// every non-identity element) or a window `[lo, hi)` of the integers
/// (shifts that keep the subset inside the window).
#[derive(Debug, Clone, Copy)]
pub enum ClosureDomain<'a> {
    Group(&'a FiniteGroup),
    IntegerWindow { lo: i64, hi: i64 },
}

impl ClosureDomain<'_> {
    fn size(&self) -> usize {
        match self {
            ClosureDomain::Group(g) => g.order(),
            ClosureDomain::IntegerWindow { lo, hi } => (hi - lo).max(0) as usize,
        }
    }

    fn label(&self, idx: usize) -> i64 {
        match self {
            ClosureDomain::Group(_) => idx as i64,
            ClosureDomain::IntegerWindow { lo, .. } => lo + idx as i64,
        }
    }

    fn index(&self, label: i64) -> Option<usize> {
        let idx = match self {
            ClosureDomain::Group(_) => label,
            ClosureDomain::IntegerWindow { lo, .. } => label - lo,
        };
        (idx >= 0 && (idx as usize) < self.size()).then_some(idx as usize)
    }

    fn moves(&self) -> Vec<(Side, i64)> {
        match self {
            ClosureDomain::Group(g) => Side::BOTH
                .iter()
                .flat_map(|&side| (1..g.order()).map(move |b| (side, b as i64)))
                .collect(),
            ClosureDomain::IntegerWindow { .. } => {
                let span = self.size() as i64;
                (1 - span..span).filter(|&b| b != 0).map(|b| (Side::Right, b)).collect()
            }
        }
    }

    fn apply(&self, idx: usize, side: Side, by: i64) -> Option<usize> {
        match self {
            ClosureDomain::Group(g) => Some(g.translate(idx, by as usize, side)),
            ClosureDomain::IntegerWindow { .. } => self.index(self.label(idx) + by),
        }
    }
}

/// A chirality class named by element labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LabeledClass {
    pub subset: Vec<i64>,
    pub bit: Sign,
}

/// Translating the ascending arrangement of the previous subset gives an
/// arrangement of `subset` whose class is `bit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureStep {
    pub side: Side,
    pub by: i64,
    pub subset: Vec<i64>,
    pub bit: Sign,
}

/// A seed class followed by the translation steps that propagate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub seed: LabeledClass,
    pub steps: Vec<ClosureStep>,
}

impl Derivation {
    pub fn end(&self) -> LabeledClass {
        match self.steps.last() {
            Some(s) => LabeledClass { subset: s.subset.clone(), bit: s.bit },
            None => self.seed.clone(),
        }
    }
}

/// A subset forced to both signs, with both derivations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConflictCertificate {
    pub subset: Vec<i64>,
    pub first: Derivation,
    pub second: Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub n: usize,
    pub domain_size: usize,
    pub bits: BTreeMap<Vec<i64>, Sign>,
}

impl Closure {
    /// Convert to an order when every subset of the group was reached.
    pub fn to_order(&self, group: &FiniteGroup) -> Option<SphericalOrder> {
        let index = crate::tuples::SubsetIndex::new(group.order(), self.n);
        if self.domain_size != group.order() || self.bits.len() != index.count() {
            return None;
        }
        let bits = index
            .iter()
            .map(|s| {
                let key: Vec<i64> = s.iter().map(|&x| x as i64).collect();
                self.bits.get(&key).copied()
            })
            .collect::<Option<Vec<_>>>()?;
        SphericalOrder::new(group, self.n, bits).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOutcome {
    Closed(Closure),
    Conflict(Box<ConflictCertificate>),
}

struct Node {
    bit: Sign,
    // (previous subset, side, by) or None for a seed
    parent: Option<(Vec<usize>, Side, i64)>,
    seed: Option<Sign>,
}

/// Close a seed set of chirality classes under all translations of the
/// domain. The bit carried to an image subset is the source bit shifted by
/// the parity of the translated ascending arrangement.
pub fn coordinated_closure(
    domain: ClosureDomain<'_>,
    n: usize,
    seed: &[LabeledClass],
) -> Result<ClosureOutcome, OrderError> {
    if n < 2 {
        return Err(OrderError::ArityTooSmall(n));
    }
    if seed.is_empty() {
        return Err(OrderError::EmptySeed);
    }
    let mut nodes: HashMap<Vec<usize>, Node> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut seeds = Vec::with_capacity(seed.len());
    for class in seed {
        let mut idx = class
            .subset
            .iter()
            .map(|&l| domain.index(l))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| OrderError::BadSeed(class.subset.clone()))?;
        idx.sort_unstable();
        if idx.len() != n || idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(OrderError::BadSeed(class.subset.clone()));
        }
        seeds.push((idx, class.bit));
    }

    let derivation = |nodes: &HashMap<Vec<usize>, Node>, mut at: Vec<usize>| {
        let mut steps = Vec::new();
        loop {
            let node = &nodes[&at];
            match &node.parent {
                Some((prev, side, by)) => {
                    steps.push(ClosureStep {
                        side: *side,
                        by: *by,
                        subset: at.iter().map(|&x| domain.label(x)).collect(),
                        bit: node.bit,
                    });
                    at = prev.clone();
                }
                None => {
                    steps.reverse();
                    return Derivation {
                        seed: LabeledClass {
                            subset: at.iter().map(|&x| domain.label(x)).collect(),
                            bit: node.seed.expect("root is a seed"),
                        },
                        steps,
                    };
                }
            }
        }
    };

    for (idx, bit) in seeds {
        match nodes.get(&idx) {
            Some(node) if node.bit != bit => {
                let first = derivation(&nodes, idx.clone());
                let labels: Vec<i64> = idx.iter().map(|&x| domain.label(x)).collect();
                let second = Derivation { seed: LabeledClass { subset: labels.clone(), bit }, steps: Vec::new() };
                return Ok(ClosureOutcome::Conflict(Box::new(ConflictCertificate { subset: labels, first, second })));
            }
            Some(_) => {}
            None => {
                nodes.insert(idx.clone(), Node { bit, parent: None, seed: Some(bit) });
                queue.push_back(idx);
            }
        }
    }

    let moves = domain.moves();
    while let Some(src) = queue.pop_front() {
        let src_bit = nodes[&src].bit;
        for &(side, by) in &moves {
            let Some(image) = src.iter().map(|&x| domain.apply(x, side, by)).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let parity = inversion_parity(&image);
            let mut target = image;
            target.sort_unstable();
            let bit = src_bit.shift(parity);
            match nodes.get(&target) {
                Some(node) if node.bit != bit => {
                    let first = derivation(&nodes, target.clone());
                    let mut second = derivation(&nodes, src.clone());
                    let labels: Vec<i64> = target.iter().map(|&x| domain.label(x)).collect();
                    second.steps.push(ClosureStep { side, by, subset: labels.clone(), bit });
                    return Ok(ClosureOutcome::Conflict(Box::new(ConflictCertificate { subset: labels, first, second })));
                }
                Some(_) => {}
                None => {
                    nodes.insert(target.clone(), Node { bit, parent: Some((src.clone(), side, by)), seed: None });
                    queue.push_back(target);
                }
            }
        }
    }

    let bits = nodes
        .into_iter()
        .map(|(k, node)| (k.into_iter().map(|x| domain.label(x)).collect(), node.bit))
        .collect();
    Ok(ClosureOutcome::Closed(Closure { n, domain_size: domain.size(), bits }))
}
