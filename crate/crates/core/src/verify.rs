//! Self-verification suites run by `expderiv verify`.

use num_bigint::BigUint;
use num_traits::One;

use crate::coeff::{coeff_closed, coeff_table_recursive, factorial};
use crate::error::{Error, Result};
use crate::partition::enumerate_partitions;
use crate::symbolic::{expand, oracle_expand, MAX_ORACLE_ORDER};

pub const MAX_VERIFY_ORDER: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: String, outcome: std::result::Result<String, String>) -> Self {
        match outcome {
            Ok(detail) => Self {
                name,
                passed: true,
                detail,
            },
            Err(detail) => Self {
                name,
                passed: false,
                detail,
            },
        }
    }
}

/// Bell numbers `B_0..=B_n` from the Bell triangle: each row starts with the
/// last entry of the previous row, and every further entry adds its left
/// neighbour to the entry above that neighbour.
pub fn bell_numbers(n: usize) -> Vec<BigUint> {
    let mut bells = Vec::with_capacity(n + 1);
    let mut row = vec![BigUint::one()];
    for _ in 0..=n {
        bells.push(row[0].clone());
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("rows are nonempty").clone());
        for above in &row {
            let v = next.last().expect("seeded") + above;
            next.push(v);
        }
        row = next;
    }
    bells
}

fn closed_vs_recursive(n: u32) -> std::result::Result<String, String> {
    let table = coeff_table_recursive(n).map_err(|e| e.to_string())?;
    let keys = enumerate_partitions(n).map_err(|e| e.to_string())?;
    if !table.keys().eq(keys.iter()) {
        return Err(format!(
            "recursive key set differs from the {} partitions",
            keys.len()
        ));
    }
    for k in &keys {
        let closed = coeff_closed(k).map_err(|e| e.to_string())?;
        let rec = table.get(k).expect("key sets match");
        if &closed != rec {
            return Err(format!("{k}: closed {closed} vs recursive {rec}"));
        }
    }
    Ok(format!("{} coefficients agree", keys.len()))
}

fn closed_vs_oracle(n: u32) -> std::result::Result<String, String> {
    let closed = expand(n).map_err(|e| e.to_string())?;
    let oracle = oracle_expand(n).map_err(|e| e.to_string())?;
    if closed != oracle {
        return Err(format!("expand({n}) differs from literal differentiation"));
    }
    Ok(format!("{} terms agree", closed.len()))
}

fn bell_identity(n: u32, bell: &BigUint) -> std::result::Result<String, String> {
    let total: BigUint = enumerate_partitions(n)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|k| coeff_closed(k).map(|c| c.into_inner()))
        .sum::<Result<BigUint>>()
        .map_err(|e| e.to_string())?;
    if &total != bell {
        return Err(format!("sum {total} != B_{n} = {bell}"));
    }
    Ok(format!("sum = B_{n} = {bell}"))
}

fn factorial_identity(n: u32) -> std::result::Result<String, String> {
    let mut total = BigUint::ZERO;
    for k in enumerate_partitions(n).map_err(|e| e.to_string())? {
        let mut weight = coeff_closed(&k).map_err(|e| e.to_string())?.into_inner();
        for (idx, &ki) in k.as_slice().iter().enumerate() {
            weight *= num_traits::pow(factorial(idx), ki as usize);
        }
        total += weight;
    }
    let want = factorial(n as usize);
    if total != want {
        return Err(format!("weighted sum {total} != {n}! = {want}"));
    }
    Ok(format!("weighted sum = {n}!"))
}

/// Runs every suite for orders up to `max_order`; the oracle comparison stops
/// at order 12.
pub fn run_checks(max_order: u32) -> Result<Vec<Check>> {
    if max_order > MAX_VERIFY_ORDER {
        return Err(Error::OrderOutOfRange {
            what: "verify",
            order: u64::from(max_order),
            max: u64::from(MAX_VERIFY_ORDER),
        });
    }
    let bells = bell_numbers(max_order as usize);
    let mut checks = Vec::new();
    for n in 1..=max_order {
        checks.push(Check::new(
            format!("closed-vs-recursive n={n}"),
            closed_vs_recursive(n),
        ));
    }
    for n in 0..=max_order.min(MAX_ORACLE_ORDER) {
        checks.push(Check::new(
            format!("closed-vs-oracle n={n}"),
            closed_vs_oracle(n),
        ));
    }
    for n in 1..=max_order {
        checks.push(Check::new(
            format!("bell n={n}"),
            bell_identity(n, &bells[n as usize]),
        ));
    }
    for n in 1..=max_order {
        checks.push(Check::new(
            format!("factorial n={n}"),
            factorial_identity(n),
        ));
    }
    Ok(checks)
}
