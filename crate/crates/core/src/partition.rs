//! Integer partitions in multiplicity form.
//!
//! A partition of `n` is stored as the vector `(k_1, k_2, ..., k_m)` where
//! `k_i` counts the parts of size `i`, so that `sum i * k_i = n`. Vectors are
//! kept canonical: no trailing zeros, and the empty vector is the unique
//! partition of 0.
//!
//! - [`enumerate_partitions`]: every partition of `n`, largest part-list first
//! - [`partition_count`]: `p(n)` by Euler's pentagonal-number recurrence
//! - [`max_nonzero_parts`]: the largest number of distinct part sizes in a
//!   partition of `n`

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Largest order accepted by any enumeration-backed operation.
pub const ENUMERATION_GUARD: u32 = 400;

/// Practical enumeration ceiling; `p(90)` is about 5.7e7 partitions.
pub const MAX_ENUMERATION_ORDER: u32 = 90;

/// A partition of `order()` in multiplicity form, `k_i` at 1-based index `i`.
///
/// Ordering follows the part-list representation: partitions are compared as
/// weakly decreasing lists of parts, lexicographically. `(0,0,1)` (the list
/// `[3]`) is therefore greater than `(1,1)` (`[2,1]`), which is greater than
/// `(3)` (`[1,1,1]`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiplicityVector(Vec<u32>);

impl MultiplicityVector {
    /// The empty partition.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a vector from `k_1, k_2, ...`, trimming trailing zeros.
    pub fn from_mults(mut mults: Vec<u32>) -> Self {
        while mults.last() == Some(&0) {
            mults.pop();
        }
        Self(mults)
    }

    /// Builds a vector from a list of parts, in any order. Zero parts are
    /// ignored.
    pub fn from_parts(parts: &[u32]) -> Self {
        let largest = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut mults = vec![0u32; largest];
        for &p in parts.iter().filter(|&&p| p > 0) {
            mults[p as usize - 1] += 1;
        }
        Self(mults)
    }

    /// The unit vector `e_i` (a single part of size `i`).
    pub fn unit(i: usize) -> Self {
        assert!(i >= 1, "part sizes start at 1");
        let mut mults = vec![0; i];
        mults[i - 1] = 1;
        Self(mults)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// Length of the canonical vector, i.e. the largest part size present.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `k_i` for 1-based `i`; zero outside the support.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// `sum i * k_i`, the integer this vector partitions.
    pub fn order(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(idx, &k)| (idx as u64 + 1) * u64::from(k))
            .sum()
    }

    /// Total number of parts, `sum k_i`.
    pub fn part_count(&self) -> u64 {
        self.0.iter().map(|&k| u64::from(k)).sum()
    }

    /// Number of distinct part sizes, i.e. nonzero entries.
    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&k| k > 0).count()
    }

    pub fn is_canonical(&self) -> bool {
        self.0.last() != Some(&0)
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.0
            .iter()
            .enumerate()
            .rev()
            .flat_map(|(idx, &k)| std::iter::repeat_n(idx as u32 + 1, k as usize))
    }

    /// `self + e_add - e_sub`, or `None` if the result would have a negative
    /// entry. Either index may be omitted.
    pub fn shifted(&self, add: Option<usize>, sub: Option<usize>) -> Option<Self> {
        let mut mults = self.0.clone();
        if let Some(i) = sub {
            let slot = mults.get_mut(i.checked_sub(1)?)?;
            *slot = slot.checked_sub(1)?;
        }
        if let Some(i) = add {
            assert!(i >= 1, "part sizes start at 1");
            if mults.len() < i {
                mults.resize(i, 0);
            }
            mults[i - 1] += 1;
        }
        Some(Self::from_mults(mults))
    }
}

impl Ord for MultiplicityVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts().cmp(other.parts())
    }
}

impl PartialOrd for MultiplicityVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, k) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<u32>> for MultiplicityVector {
    fn from(mults: Vec<u32>) -> Self {
        Self::from_mults(mults)
    }
}

/// Streaming generator over the partitions of `n`, in strictly decreasing
/// order (`[n]` first, `[1, 1, ..., 1]` last). Steps directly in
/// multiplicity form.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Partitions {
    pub fn new(n: u32) -> Self {
        let mut mults = vec![0; n as usize];
        if n > 0 {
            mults[n as usize - 1] = 1;
        }
        Self {
            current: Some(mults),
        }
    }
}

/// Replaces the smallest part `i > 1` with `i - 1` and regroups it together
/// with all the 1s into parts of size `i - 1` and below, greedily. Returns
/// `false` once only 1s remain.
fn step(mults: &mut Vec<u32>) -> bool {
    let Some(idx) = mults.iter().skip(1).position(|&k| k > 0).map(|p| p + 1) else {
        return false;
    };
    let part = idx as u32 + 1;
    let ones = mults[0];
    mults[0] = 0;
    mults[idx] -= 1;
    let total = part + ones;
    let v = part - 1;
    mults[v as usize - 1] += total / v;
    let r = total % v;
    if r > 0 {
        mults[r as usize - 1] += 1;
    }
    while mults.last() == Some(&0) {
        mults.pop();
    }
    true
}

impl Iterator for Partitions {
    type Item = MultiplicityVector;

    fn next(&mut self) -> Option<Self::Item> {
        let mults = self.current.as_mut()?;
        let out = MultiplicityVector(mults.clone());
        if !step(mults) {
            self.current = None;
        }
        Some(out)
    }
}

/// All partitions of `n` in canonical (strictly decreasing) order.
pub fn enumerate_partitions(n: u32) -> Result<Vec<MultiplicityVector>> {
    check_enumerable(n, "partition enumeration")?;
    Ok(Partitions::new(n).collect())
}

pub(crate) fn check_enumerable(n: u32, what: &'static str) -> Result<()> {
    if n > MAX_ENUMERATION_ORDER {
        let max = u64::from(MAX_ENUMERATION_ORDER.min(ENUMERATION_GUARD));
        return Err(Error::OrderOutOfRange {
            what,
            order: u64::from(n),
            max,
        });
    }
    Ok(())
}

/// `p(n)`, the number of partitions of `n`.
///
/// Uses Euler's recurrence over generalized pentagonal numbers
/// `g = j(3j -+ 1)/2`:
///
/// ```text
/// p(m) = sum_{j>=1} (-1)^(j+1) [p(m - j(3j-1)/2) + p(m - j(3j+1)/2)]
/// ```
///
/// This never touches the enumerator, so the two can check each other.
pub fn partition_count(n: u32) -> BigUint {
    let n = n as usize;
    let mut table: Vec<BigInt> = Vec::with_capacity(n + 1);
    table.push(BigInt::from(1));
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1usize.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = table[m - g1].clone();
            if g2 <= m {
                term += &table[m - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        debug_assert!(!acc.is_negative());
        table.push(acc);
    }
    table
        .pop()
        .and_then(|v| v.to_biguint())
        .expect("partition counts are nonnegative")
}

/// Largest `s` with `s(s+1)/2 <= n`: the most distinct part sizes any
/// partition of `n` can have. Computed with integer square roots only.
pub fn max_nonzero_parts(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::OrderTooSmall {
            what: "max_nonzero_parts",
            min: 1,
        });
    }
    let disc = 8 * u128::from(n) + 1;
    let s = (disc.isqrt() - 1) / 2;
    debug_assert!(s * (s + 1) / 2 <= u128::from(n));
    debug_assert!((s + 1) * (s + 2) / 2 > u128::from(n));
    Ok(s as u64)
}
