//! Spherical orders on a finite group, stored as one chirality bit per
//! `n`-subset.
//!
//! An order never materializes its tuple set. An arrangement belongs to the
//! order iff it has a repeated coordinate, or its chirality class agrees
//! with the stored bit of its underlying subset.

mod closure;
mod verify;
mod zline;

use serde::{Deserialize, Serialize};

pub use closure::{
    coordinated_closure, cyclically_ordered, Closure, ClosureDomain, ClosureOutcome, ClosureStep,
    ConflictCertificate, Derivation, LabeledClass,
};
pub use verify::{
    literal_work, verify_order, verify_order_with, Axiom, AxiomCheck, AxiomReport, CheckStatus,
    Counterexample, VerifyMode, VerifyOptions, DEFAULT_VERIFY_CAP,
};
pub use zline::{check_z_line, z_line_membership, ZLineFailure, ZLineReport};

use crate::error::{OrderError, TupleError};
use crate::group::{Element, FiniteGroup};
use crate::tuples::{first_repeat, inversion_parity, Chirality, Sign, SubsetIndex};

#[derive(Debug, Clone)]
pub struct SphericalOrder {
    n: usize,
    group_name: String,
    group_order: usize,
    index: SubsetIndex,
    bits: Vec<Sign>,
}

impl PartialEq for SphericalOrder {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.group_name == other.group_name
            && self.group_order == other.group_order
            && self.bits == other.bits
    }
}

impl Eq for SphericalOrder {}

impl SphericalOrder {
    /// Build an order from bits listed in colex subset order.
    pub fn new(group: &FiniteGroup, n: usize, bits: Vec<Sign>) -> Result<Self, OrderError> {
        if n < 2 {
            return Err(OrderError::ArityTooSmall(n));
        }
        let index = SubsetIndex::new(group.order(), n);
        if bits.len() != index.count() {
            return Err(OrderError::WrongBitCount {
                m: group.order(),
                n,
                expected: index.count(),
                got: bits.len(),
            });
        }
        Ok(SphericalOrder {
            n,
            group_name: group.name().to_string(),
            group_order: group.order(),
            index,
            bits,
        })
    }

    /// Every subset gets the same sign.
    pub fn uniform(group: &FiniteGroup, n: usize, bit: Sign) -> Result<Self, OrderError> {
        let count = SubsetIndex::new(group.order(), n).count();
        Self::new(group, n, vec![bit; count])
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn subsets(&self) -> &SubsetIndex {
        &self.index
    }

    pub fn bits(&self) -> &[Sign] {
        &self.bits
    }

    pub fn bit(&self, rank: usize) -> Sign {
        self.bits[rank]
    }

    /// The chosen class of every subset, in colex order.
    pub fn classes(&self) -> impl Iterator<Item = Chirality> + '_ {
        self.index
            .iter()
            .zip(&self.bits)
            .map(|(subset, &bit)| Chirality { subset, bit })
    }

    pub fn with_flipped(&self, rank: usize) -> Self {
        let mut out = self.clone();
        out.bits[rank] = !out.bits[rank];
        out
    }

    pub fn check_group(&self, group: &FiniteGroup) -> Result<(), OrderError> {
        if group.order() != self.group_order || group.name() != self.group_name {
            return Err(OrderError::GroupMismatch {
                order_group: self.group_name.clone(),
                order_m: self.group_order,
                group: group.name().to_string(),
                group_m: group.order(),
            });
        }
        Ok(())
    }

    /// Membership of an arrangement.
    pub fn membership(&self, arr: &[Element]) -> Result<bool, OrderError> {
        if arr.len() != self.n {
            return Err(OrderError::ArityMismatch { expected: self.n, got: arr.len() });
        }
        if let Some(&x) = arr.iter().find(|&&x| x >= self.group_order) {
            return Err(TupleError::OutOfRange { element: x, order: self.group_order }.into());
        }
        Ok(self.contains(arr))
    }

    /// Membership without argument checks.
    #[inline]
    pub(crate) fn contains(&self, arr: &[Element]) -> bool {
        if first_repeat(arr).is_some() {
            return true;
        }
        let sign = Sign::of_parity(inversion_parity(arr));
        self.bits[self.index.rank_unsorted(arr)] == sign
    }

    /// The dual order: every chirality choice flipped.
    pub fn dual(&self) -> Self {
        let mut out = self.clone();
        for b in &mut out.bits {
            *b = !*b;
        }
        out
    }

    pub fn to_witness(&self) -> WitnessFile {
        WitnessFile {
            group: self.group_name.clone(),
            n: self.n,
            bits: self
                .classes()
                .map(|c| WitnessBit { subset: c.subset, bit: c.bit })
                .collect(),
        }
    }

    /// Rebuild an order from its witness file. The file must list every
    /// subset exactly once, ascending, in colex order.
    pub fn from_witness(group: &FiniteGroup, file: &WitnessFile) -> Result<Self, OrderError> {
        if file.group != group.name() {
            return Err(OrderError::GroupMismatch {
                order_group: file.group.clone(),
                order_m: group.order(),
                group: group.name().to_string(),
                group_m: group.order(),
            });
        }
        if file.n < 2 {
            return Err(OrderError::ArityTooSmall(file.n));
        }
        let index = SubsetIndex::new(group.order(), file.n);
        if file.bits.len() != index.count() {
            return Err(OrderError::WrongBitCount {
                m: group.order(),
                n: file.n,
                expected: index.count(),
                got: file.bits.len(),
            });
        }
        for (rank, entry) in file.bits.iter().enumerate() {
            if entry.subset != index.unrank(rank) {
                return Err(OrderError::Malformed(format!(
                    "entry {rank} has subset {:?}, expected {:?} in colex order",
                    entry.subset,
                    index.unrank(rank)
                )));
            }
        }
        SphericalOrder::new(group, file.n, file.bits.iter().map(|e| e.bit).collect())
    }
}

/// Orientation assignment with no subsets: only repeat tuples are members.
/// Valid exactly when `n > |G|`.
pub fn trivial_order(group: &FiniteGroup, n: usize) -> Result<SphericalOrder, OrderError> {
    if n <= group.order() {
        return Err(OrderError::NotTrivialArity { n, m: group.order() });
    }
    SphericalOrder::new(group, n, Vec::new())
}

/// JSON interchange form of an order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub group: String,
    pub n: usize,
    pub bits: Vec<WitnessBit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBit {
    pub subset: Vec<Element>,
    pub bit: Sign,
}

impl WitnessFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, OrderError> {
        serde_json::from_str(text).map_err(|e| OrderError::Malformed(e.to_string()))
    }
}
