//! Symbolic expansions of `(e^f)^(n)`.
//!
//! An [`Expansion`] is the bracketed sum with the `e^f` prefactor factored
//! out: one [`Term`] per partition `k` of `n`, carrying the coefficient of
//! `prod (f^(i))^(k_i)`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::coeff::{coeff_closed, Coefficient};
use crate::error::{Error, Result};
use crate::partition::{check_enumerable, MultiplicityVector, Partitions};

/// Largest order accepted by [`oracle_expand`].
pub const MAX_ORACLE_ORDER: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coefficient,
    /// Exponent `k_i` on `f^(i)`.
    pub monomial: MultiplicityVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    order: u32,
    terms: Vec<Term>,
}

impl Expansion {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Terms in canonical order (largest part-list first).
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given monomial, if present.
    pub fn coefficient_of(&self, k: &MultiplicityVector) -> Option<&Coefficient> {
        self.terms
            .iter()
            .find(|t| &t.monomial == k)
            .map(|t| &t.coeff)
    }

    /// Collects like monomials into a finalized expansion in canonical order.
    /// Zero coefficients are dropped.
    fn from_map(order: u32, map: BTreeMap<MultiplicityVector, BigUint>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| c.bits() > 0)
            .map(|(monomial, c)| Term {
                coeff: Coefficient::new(c),
                monomial,
            })
            .collect();
        Self { order, terms }
    }

    /// Checks the structural invariants: canonical, distinct monomials of
    /// the right order, positive coefficients, canonical ordering.
    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            if !t.monomial.is_canonical() {
                return Err(Error::Parse(format!(
                    "monomial {} has trailing zeros",
                    t.monomial
                )));
            }
            let actual = t.monomial.order();
            if actual != u64::from(self.order) {
                return Err(Error::OrderMismatch {
                    expected: u64::from(self.order),
                    actual,
                });
            }
            if t.coeff.value().bits() == 0 {
                return Err(Error::Parse(format!("zero coefficient on {}", t.monomial)));
            }
        }
        if self
            .terms
            .windows(2)
            .any(|w| w[0].monomial <= w[1].monomial)
        {
            return Err(Error::Parse(
                "terms are not distinct or not in canonical order".into(),
            ));
        }
        Ok(())
    }

    /// One step of literal differentiation, with `f` abstract:
    ///
    /// ```text
    /// d/dx [e^f * M_k] = e^f * (M_(k+e_1) + sum_i k_i M_(k - e_i + e_(i+1)))
    /// ```
    ///
    /// The first term is the chain rule on `e^f`, the rest is the product
    /// rule over every factor `(f^(i))^(k_i)`.
    pub fn differentiate(&self) -> Self {
        let mut acc: BTreeMap<MultiplicityVector, BigUint> = BTreeMap::new();
        for term in &self.terms {
            let c = term.coeff.value();
            let chain = term
                .monomial
                .shifted(Some(1), None)
                .expect("add-only shift");
            *acc.entry(chain).or_default() += c;
            for i in 1..=term.monomial.len() {
                let ki = term.monomial.get(i);
                if ki == 0 {
                    continue;
                }
                let next = term
                    .monomial
                    .shifted(Some(i + 1), Some(i))
                    .expect("k_i > 0");
                *acc.entry(next).or_default() += c * BigUint::from(ki);
            }
        }
        Self::from_map(self.order + 1, acc)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Latex => self.to_latex(),
            Format::Json => self.to_json(),
        }
    }

    /// `e^f * (f1^3 + 3 f1 f2 + f3)`, where `fi` is `f^(i)`.
    pub fn to_text(&self) -> String {
        let body = self
            .terms
            .iter()
            .rev()
            .map(|t| {
                render_term(t, " ", |i, k| {
                    if k == 1 {
                        format!("f{i}")
                    } else {
                        format!("f{i}^{k}")
                    }
                })
            })
            .collect::<Vec<_>>()
            .join(" + ");
        format!("e^f * ({body})")
    }

    /// `e^{f(x)}\left( (f')^{3} + 3 f' f'' + f''' \right)`; orders above 3
    /// are written `f^{(i)}`.
    pub fn to_latex(&self) -> String {
        let body = self
            .terms
            .iter()
            .rev()
            .map(|t| {
                render_term(t, " ", |i, k| {
                    let sym = latex_symbol(i);
                    if k == 1 {
                        sym
                    } else {
                        format!("({sym})^{{{k}}}")
                    }
                })
            })
            .collect::<Vec<_>>()
            .join(" + ");
        format!("e^{{f(x)}}\\left( {body} \\right)")
    }

    /// `{"order":n,"terms":[{"coeff":"<decimal>","mult":[k_1,...]}]}`, in
    /// canonical term order.
    pub fn to_json(&self) -> String {
        let doc = JsonExpansion {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| JsonTerm {
                    coeff: t.coeff.to_string(),
                    mult: t.monomial.as_slice().to_vec(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("plain data always serializes")
    }

    /// Parses the JSON rendering back, rejecting documents that break any
    /// expansion invariant.
    pub fn from_json(input: &str) -> Result<Self> {
        let doc: JsonExpansion =
            serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            if !t.coeff.bytes().all(|b| b.is_ascii_digit()) || t.coeff.is_empty() {
                return Err(Error::Parse(format!("bad coefficient {:?}", t.coeff)));
            }
            let coeff = BigUint::from_str(&t.coeff)
                .map_err(|e| Error::Parse(format!("bad coefficient {:?}: {e}", t.coeff)))?;
            if t.mult.last() == Some(&0) {
                return Err(Error::Parse(format!(
                    "mult {:?} is not trailing-zero-free",
                    t.mult
                )));
            }
            terms.push(Term {
                coeff: Coefficient::new(coeff),
                monomial: MultiplicityVector::from_mults(t.mult),
            });
        }
        let e = Self {
            order: doc.order,
            terms,
        };
        e.validate()?;
        Ok(e)
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn render_term(t: &Term, sep: &str, factor: impl Fn(usize, u32) -> String) -> String {
    let factors: Vec<String> = t
        .monomial
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(idx, &k)| factor(idx + 1, k))
        .collect();
    let mut out = String::new();
    if factors.is_empty() || !t.coeff.is_one() {
        write!(out, "{}", t.coeff).unwrap();
    }
    for f in factors {
        if !out.is_empty() {
            out.push_str(sep);
        }
        out.push_str(&f);
    }
    out
}

fn latex_symbol(i: usize) -> String {
    match i {
        1..=3 => format!("f{}", "'".repeat(i)),
        _ => format!("f^{{({i})}}"),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonExpansion {
    order: u32,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTerm {
    coeff: String,
    mult: Vec<u32>,
}

/// Output format for [`Expansion::render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "latex" => Ok(Self::Latex),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// The order-`n` expansion, one term per partition with its closed-form
/// coefficient. `expand(0)` is the single constant term `1`.
pub fn expand(n: u32) -> Result<Expansion> {
    check_enumerable(n, "expand")?;
    let terms = Partitions::new(n)
        .map(|k| {
            Ok(Term {
                coeff: coeff_closed(&k)?,
                monomial: k,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Expansion { order: n, terms })
}

/// The order-`n` expansion obtained by differentiating `e^f` literally `n`
/// times and collecting like monomials. Test oracle; capped at order 12.
pub fn oracle_expand(n: u32) -> Result<Expansion> {
    if n > MAX_ORACLE_ORDER {
        return Err(Error::OrderOutOfRange {
            what: "oracle expansion",
            order: u64::from(n),
            max: u64::from(MAX_ORACLE_ORDER),
        });
    }
    let mut e = Expansion {
        order: 0,
        terms: vec![Term {
            coeff: Coefficient::from(1),
            monomial: MultiplicityVector::empty(),
        }],
    };
    for _ in 0..n {
        e = e.differentiate();
    }
    Ok(e)
}
