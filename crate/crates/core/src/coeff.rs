//! Exact coefficients `a_k^n` of the monomials `prod (f^(i))^(k_i)` in the
//! nth derivative of `exp(f)`.
//!
//! Two independent routes are provided: [`coeff_closed`] evaluates the
//! closed form `n! / (prod k_i! * prod (i!)^(k_i))`, and
//! [`coeff_table_recursive`] builds the whole table for order `n` by
//! stepping the order-raising recursion from `a_(1)^1 = 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{check_enumerable, MultiplicityVector};

/// Largest order accepted by [`coeff_closed`].
pub const MAX_CLOSED_ORDER: u64 = 10_000;

/// An exact nonnegative integer coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coefficient(BigUint);

impl Coefficient {
    pub fn new(value: BigUint) -> Self {
        Self(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<BigUint> for Coefficient {
    fn from(value: BigUint) -> Self {
        Self(value)
    }
}

impl From<u64> for Coefficient {
    fn from(value: u64) -> Self {
        Self(BigUint::from(value))
    }
}

fn factorial_cache() -> &'static RwLock<Vec<BigUint>> {
    static CACHE: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigUint::one()]))
}

/// `m!`, memoized in a grow-only process-wide table.
pub fn factorial(m: usize) -> BigUint {
    {
        let cache = factorial_cache().read().expect("factorial cache poisoned");
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
    }
    let mut cache = factorial_cache().write().expect("factorial cache poisoned");
    // another writer may have extended the table in between
    while cache.len() <= m {
        let next = cache.last().expect("cache seeded with 0!") * BigUint::from(cache.len());
        cache.push(next);
    }
    cache[m].clone()
}

/// `a_k^n = n! / (k! (s!)^k)` with `n = order(k)`.
///
/// The division is exact (the value counts set partitions of `{1..n}` with
/// `k_i` blocks of size `i`); a remainder would mean the arithmetic is
/// broken, and panics rather than truncating.
pub fn coeff_closed(k: &MultiplicityVector) -> Result<Coefficient> {
    let n = k.order();
    if n > MAX_CLOSED_ORDER {
        return Err(Error::OrderOutOfRange {
            what: "closed-form coefficient",
            order: n,
            max: MAX_CLOSED_ORDER,
        });
    }
    let mut denom = BigUint::one();
    for (idx, &ki) in k.as_slice().iter().enumerate() {
        if ki == 0 {
            continue;
        }
        denom *= factorial(ki as usize);
        if idx > 0 {
            denom *= num_traits::pow(factorial(idx + 1), ki as usize);
        }
    }
    let (quot, rem) = factorial(n as usize).div_rem(&denom);
    assert!(
        rem.is_zero(),
        "inexact closed-form division for {k}: {n}! mod {denom} = {rem}"
    );
    Ok(Coefficient(quot))
}

/// The family `{a_k^n}` for one fixed order `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    order: u32,
    entries: BTreeMap<MultiplicityVector, Coefficient>,
}

impl CoefficientTable {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: &MultiplicityVector) -> Option<&Coefficient> {
        self.entries.get(k)
    }

    /// Zero-extended lookup: vectors of another order, or absent from the
    /// table, read as 0.
    pub fn lookup(&self, k: &MultiplicityVector) -> BigUint {
        if k.order() != u64::from(self.order) {
            return BigUint::zero();
        }
        self.entries
            .get(k)
            .map(|c| c.value().clone())
            .unwrap_or_default()
    }

    /// Entries in canonical enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiplicityVector, &Coefficient)> {
        self.entries.iter().rev()
    }

    pub fn keys(&self) -> impl Iterator<Item = &MultiplicityVector> {
        self.entries.keys().rev()
    }

    fn base() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(MultiplicityVector::unit(1), Coefficient::from(1));
        Self { order: 1, entries }
    }

    /// The table for `order + 1`:
    ///
    /// ```text
    /// a_k^(n+1) = a_(k - e_1)^n + sum_{i=1..n} (k_i + 1) a_(k + e_i - e_(i+1))^n
    /// ```
    ///
    /// The key set is generated from this table's keys as `k + e_1` and
    /// `k - e_i + e_(i+1)`, so it never consults the enumerator.
    fn raise(&self) -> Self {
        let n = self.order as usize;
        let mut keys = BTreeSet::new();
        for k in self.entries.keys() {
            keys.insert(k.shifted(Some(1), None).expect("adding never fails"));
            for i in 1..=k.len() {
                if let Some(next) = k.shifted(Some(i + 1), Some(i)) {
                    keys.insert(next);
                }
            }
        }

        let entries = keys
            .into_iter()
            .map(|k| {
                let mut a = k
                    .shifted(None, Some(1))
                    .map(|prev| self.lookup(&prev))
                    .unwrap_or_default();
                for i in 1..=n {
                    if let Some(prev) = k.shifted(Some(i), Some(i + 1)) {
                        let weight = BigUint::from(k.get(i)) + 1u32;
                        a += weight * self.lookup(&prev);
                    }
                }
                (k, Coefficient(a))
            })
            .collect();
        Self {
            order: self.order + 1,
            entries,
        }
    }
}

impl fmt::Debug for CoefficientTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// Builds the table of order `n` by iterating the recursion from order 1.
pub fn coeff_table_recursive(n: u32) -> Result<CoefficientTable> {
    if n == 0 {
        return Err(Error::OrderTooSmall {
            what: "recursive coefficient table",
            min: 1,
        });
    }
    check_enumerable(n, "recursive coefficient table")?;
    let mut table = CoefficientTable::base();
    while table.order < n {
        table = table.raise();
    }
    Ok(table)
}
