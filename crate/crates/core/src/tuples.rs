//! Arrangements of group elements: permutation parity, chirality classes of
//! `n`-subsets, translations, and colex ranking of subsets.

use std::fmt;
use std::ops::{BitXor, Not};

use serde::{Deserialize, Serialize};

use crate::error::TupleError;
use crate::group::{Element, FiniteGroup, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Which of the two even-permutation classes of a subset is meant. `Plus`
/// is the class of the ascending arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn of_parity(p: Parity) -> Sign {
        match p {
            Parity::Even => Sign::Plus,
            Parity::Odd => Sign::Minus,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Sign::Plus => Parity::Even,
            Sign::Minus => Parity::Odd,
        }
    }

    /// Shift by a parity: `Plus ^ Odd = Minus`.
    pub fn shift(self, p: Parity) -> Sign {
        Sign::of_parity(self.parity() ^ p)
    }
}

impl Not for Sign {
    type Output = Sign;

    fn not(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One chirality class: an ascending subset plus the sign of the class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chirality {
    pub subset: Vec<Element>,
    pub bit: Sign,
}

impl Chirality {
    /// Canonical arrangement of the class: ascending for `+`, ascending
    /// with the first two coordinates swapped for `-`.
    pub fn representative(&self) -> Vec<Element> {
        representative(&self.subset, self.bit)
    }
}

pub(crate) fn representative<T: Copy>(subset: &[T], bit: Sign) -> Vec<T> {
    let mut arr = subset.to_vec();
    if bit == Sign::Minus && arr.len() >= 2 {
        arr.swap(0, 1);
    }
    arr
}

/// Index of the first repeated coordinate, if any.
pub fn first_repeat<T: PartialEq>(arr: &[T]) -> Option<usize> {
    (1..arr.len()).find(|&j| arr[..j].contains(&arr[j]))
}

pub fn has_repeat<T: PartialEq>(arr: &[T]) -> bool {
    first_repeat(arr).is_some()
}

/// Parity of the inversion count. For pairwise distinct values this is the
/// parity of the permutation carrying the ascending sort onto `arr`.
#[inline]
pub fn inversion_parity<T: PartialOrd>(arr: &[T]) -> Parity {
    let mut odd = false;
    for j in 1..arr.len() {
        for i in 0..j {
            if arr[i] > arr[j] {
                odd = !odd;
            }
        }
    }
    Parity::from_bit(odd)
}

/// Parity of an arrangement with pairwise distinct coordinates.
pub fn parity(arr: &[Element]) -> Result<Parity, TupleError> {
    if let Some(j) = first_repeat(arr) {
        return Err(TupleError::RepeatedCoordinate(arr[j]));
    }
    Ok(inversion_parity(arr))
}

pub fn chirality_class(arr: &[Element]) -> Result<Chirality, TupleError> {
    let p = parity(arr)?;
    let mut subset = arr.to_vec();
    subset.sort_unstable();
    Ok(Chirality { subset, bit: Sign::of_parity(p) })
}

/// Coordinatewise product with `b` on the given side.
pub fn translate_tuple(
    group: &FiniteGroup,
    arr: &[Element],
    b: Element,
    side: Side,
) -> Result<Vec<Element>, TupleError> {
    let m = group.order();
    if let Some(&x) = arr.iter().chain(std::iter::once(&b)).find(|&&x| x >= m) {
        return Err(TupleError::OutOfRange { element: x, order: m });
    }
    Ok(arr.iter().map(|&x| group.translate(x, b, side)).collect())
}

/// All even permutations of `0..n`, each given as an index map
/// (`permuted[i] = arr[perm[i]]`).
pub fn even_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(n, &mut perm, &mut out);
    out.retain(|p| !inversion_parity(p).is_odd());
    out.sort();
    out
}

fn heap_permutations(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, perm, out);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, perm, out);
}

/// `C(m, n)` as `u128`, saturating.
pub fn binomial(m: usize, n: usize) -> u128 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n);
    let mut acc: u128 = 1;
    for i in 0..n {
        acc = acc.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Colexicographic ranking of the `n`-subsets of `0..m`.
///
/// The rank of `{s_0 < s_1 < … < s_{n-1}}` is `Σ C(s_i, i + 1)`.
#[derive(Debug, Clone)]
pub struct SubsetIndex {
    m: usize,
    n: usize,
    count: usize,
    // binom[x][k] = C(x, k) for x < m, k <= n
    binom: Vec<Vec<usize>>,
}

impl SubsetIndex {
    pub fn new(m: usize, n: usize) -> Self {
        let binom = (0..=m)
            .map(|x| (0..=n + 1).map(|k| binomial(x, k) as usize).collect())
            .collect();
        SubsetIndex { m, n, count: binomial(m, n) as usize, binom }
    }

    pub fn universe(&self) -> usize {
        self.m
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Rank of an ascending subset.
    pub fn rank_sorted(&self, subset: &[Element]) -> usize {
        subset.iter().enumerate().map(|(i, &s)| self.binom[s][i + 1]).sum()
    }

    /// Rank of the underlying set of an arrangement with distinct
    /// coordinates, in any order.
    #[inline]
    pub fn rank_unsorted(&self, arr: &[Element]) -> usize {
        arr.iter()
            .map(|&x| {
                let pos = arr.iter().filter(|&&y| y < x).count();
                self.binom[x][pos + 1]
            })
            .sum()
    }

    pub fn unrank(&self, mut rank: usize) -> Vec<Element> {
        let mut out = vec![0; self.n];
        for k in (1..=self.n).rev() {
            let mut x = k - 1;
            while x < self.m && self.binom[x + 1][k] <= rank {
                x += 1;
            }
            rank -= self.binom[x][k];
            out[k - 1] = x;
        }
        out
    }

    /// Subsets in colex order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<Element>> + '_ {
        (0..self.count).map(move |r| self.unrank(r))
    }
}
