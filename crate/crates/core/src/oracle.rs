//! Brute-force decision by enumerating every orientation assignment and
//! verifying each one literally. Shares only the group, the order
//! representation and the verifier with the main path.

use rayon::prelude::*;

use crate::error::OracleError;
use crate::group::FiniteGroup;
use crate::order::{verify_order_with, SphericalOrder, VerifyMode, VerifyOptions};
use crate::solver::{Certificate, Method, Verdict};
use crate::tuples::{binomial, Sign};

/// Largest number of subsets the oracle will enumerate assignments over.
pub const ORACLE_SUBSET_GUARD: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// The lexicographically least valid order, or an exhaustion
    /// certificate.
    pub verdict: Verdict,
    pub valid_orders: u64,
}

fn order_from_mask(group: &FiniteGroup, n: usize, count: usize, mask: u64) -> SphericalOrder {
    // subset 0 is the most significant position, so numeric order on masks
    // is lexicographic order on bit sequences with + < -
    let bits = (0..count)
        .map(|r| if mask >> (count - 1 - r) & 1 == 1 { Sign::Minus } else { Sign::Plus })
        .collect();
    SphericalOrder::new(group, n, bits).expect("bit count matches")
}

pub fn brute_decide(group: &FiniteGroup, n: usize) -> Result<OracleReport, OracleError> {
    let m = group.order();
    let subsets = binomial(m, n);
    if subsets > ORACLE_SUBSET_GUARD as u128 {
        return Err(OracleError::TooManySubsets { m, n, subsets, guard: ORACLE_SUBSET_GUARD });
    }
    let count = subsets as usize;
    let opts = VerifyOptions {
        mode: VerifyMode::Literal,
        skip_colliding_replacements: false,
        stop_at_first_failure: true,
        ..VerifyOptions::default()
    };
    // surface arity and cap errors before fanning out
    verify_order_with(group, &order_from_mask(group, n, count, 0), &opts)?;

    let total = 1u64 << count;
    let valid: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&mask| {
            let k = order_from_mask(group, n, count, mask);
            verify_order_with(group, &k, &opts).map(|r| r.passed()).unwrap_or(false)
        })
        .collect();

    let verdict = match valid.iter().min() {
        Some(&mask) => Verdict::Orderable { witness: order_from_mask(group, n, count, mask), method: Method::BruteForce },
        None => Verdict::NotOrderable { certificate: Certificate::Exhaustive { assignments: total } },
    };
    Ok(OracleReport { verdict, valid_orders: valid.len() as u64 })
}
