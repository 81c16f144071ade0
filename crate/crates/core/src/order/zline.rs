//! The natural spherical order on the integers: a tuple is a member iff it
//! has a repeat or is an even rearrangement of its ascending sort.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::tuples::{has_repeat, inversion_parity};

pub fn z_line_membership(arr: &[i64]) -> bool {
    has_repeat(arr) || !inversion_parity(arr).is_odd()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum ZLineFailure {
    Shift { tuple: Vec<i64>, shift: i64 },
    Dichotomy { tuple: Vec<i64>, i: usize, j: usize },
    Replacement { tuple: Vec<i64>, t: i64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct ZLineReport {
    pub n: usize,
    pub lo: i64,
    pub hi: i64,
    pub samples: usize,
    pub seed: u64,
    pub dichotomy_checks: usize,
    pub replacement_checks: usize,
    pub failures: Vec<ZLineFailure>,
}

impl ZLineReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sample `samples` tuples from the inclusive window `[lo, hi]` and check
/// shift invariance, the swap dichotomy on distinct tuples, and the
/// replacement property against a fresh `t` from the window.
pub fn check_z_line(n: usize, lo: i64, hi: i64, samples: usize, seed: u64) -> ZLineReport {
    assert!(n >= 2 && lo <= hi, "need n >= 2 and a nonempty window");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let (mut dichotomy_checks, mut replacement_checks) = (0, 0);
    let width = hi - lo + 1;
    for _ in 0..samples {
        let tuple: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        let member = z_line_membership(&tuple);

        let shift = rng.gen_range(-10 * width..=10 * width);
        let shifted: Vec<i64> = tuple.iter().map(|x| x + shift).collect();
        if z_line_membership(&shifted) != member {
            failures.push(ZLineFailure::Shift { tuple: tuple.clone(), shift });
        }

        if !has_repeat(&tuple) {
            dichotomy_checks += 1;
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let mut swapped = tuple.clone();
            swapped.swap(i, j);
            if member == z_line_membership(&swapped) {
                failures.push(ZLineFailure::Dichotomy { tuple: tuple.clone(), i: i.min(j), j: i.max(j) });
            }
        }

        if member && (width as usize) > n {
            let t = loop {
                let t = rng.gen_range(lo..=hi);
                if !tuple.contains(&t) {
                    break t;
                }
            };
            replacement_checks += 1;
            let found = (0..n).any(|i| {
                let mut probe = tuple.clone();
                probe[i] = t;
                z_line_membership(&probe)
            });
            if !found {
                failures.push(ZLineFailure::Replacement { tuple, t });
            }
        }
    }
    ZLineReport { n, lo, hi, samples, seed, dichotomy_checks, replacement_checks, failures }
}
