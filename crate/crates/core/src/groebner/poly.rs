//! Sparse monomials, binomials and integer polynomials over grid variables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Cell, GeneralMinor, UnitMinor};

/// A monomial in the variables `x[i,j]`; zero exponents are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(BTreeMap<Cell, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(cell: Cell) -> Self {
        Monomial([(cell, 1)].into_iter().collect())
    }

    /// Product of the given variables, repetitions giving powers.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let mut map = BTreeMap::new();
        for c in cells {
            *map.entry(c).or_insert(0) += 1;
        }
        Monomial(map)
    }

    pub fn from_exponents<I: IntoIterator<Item = (Cell, u32)>>(exps: I) -> Self {
        let mut map = BTreeMap::new();
        for (c, e) in exps {
            if e > 0 {
                *map.entry(c).or_insert(0) += e;
            }
        }
        Monomial(map)
    }

    pub fn exponents(&self) -> &BTreeMap<Cell, u32> {
        &self.0
    }

    pub fn exponent(&self, cell: Cell) -> u32 {
        self.0.get(&cell).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.keys().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map = self.0.clone();
        for (c, e) in &other.0 {
            *map.entry(*c).or_insert(0) += e;
        }
        Monomial(map)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|(c, e)| (*c, e * k))
                .filter(|(_, e)| *e > 0)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(c, e)| other.exponent(*c) >= *e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.keys().all(|c| !other.0.contains_key(c))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (c, e) in &self.0 {
            for _ in 0..*e {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "x[{},{}]", c.row, c.col)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// `lead - tail`, or the pure monomial `lead` when `tail` is absent.
///
/// The lead/tail split is only meaningful relative to a variable ranking;
/// [`crate::groebner::VariableRanking::orient`] puts an element in normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinomialElement {
    pub lead: Monomial,
    pub tail: Option<Monomial>,
}

impl BinomialElement {
    pub fn binomial(lead: Monomial, tail: Monomial) -> Self {
        BinomialElement {
            lead,
            tail: Some(tail),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        BinomialElement {
            lead: m,
            tail: None,
        }
    }

    /// `ad - bc` for the minor's corners `a b / c d`.
    pub fn from_minor(m: &GeneralMinor) -> Self {
        let [a, b, c, d] = m.vertices();
        Self::binomial(Monomial::from_cells([a, d]), Monomial::from_cells([b, c]))
    }

    pub fn from_unit(m: &UnitMinor) -> Self {
        Self::from_minor(&m.as_general())
    }

    pub fn is_monomial(&self) -> bool {
        self.tail.is_none()
    }

    pub fn degree(&self) -> u32 {
        let d = self.lead.degree();
        self.tail.as_ref().map_or(d, |t| d.max(t.degree()))
    }

    /// Multiplies both terms by `m`.
    pub fn scale(&self, m: &Monomial) -> Self {
        BinomialElement {
            lead: self.lead.mul(m),
            tail: self.tail.as_ref().map(|t| t.mul(m)),
        }
    }

    pub fn variables(&self) -> impl Iterator<Item = Cell> + '_ {
        self.lead
            .variables()
            .chain(self.tail.iter().flat_map(|t| t.variables()))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(self.lead.clone(), 1);
        if let Some(t) = &self.tail {
            p.add_term(t.clone(), -1);
        }
        p
    }
}

impl fmt::Display for BinomialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tail {
            Some(t) => write!(f, "{}-{}", self.lead, t),
            None => write!(f, "{}", self.lead),
        }
    }
}

fn parse_term(text: &str) -> Result<Monomial> {
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::one());
    }
    let mut cells = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        let (base, power) = match factor.split_once('^') {
            Some((b, p)) => (
                b.trim(),
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        let inner = base
            .strip_prefix("x[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected x[r,c], got {factor:?}")))?;
        let (r, c) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected x[r,c], got {factor:?}")))?;
        let r: i64 = r
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad row in {factor:?}")))?;
        let c: i64 = c
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad column in {factor:?}")))?;
        let cell = Cell::from_signed(r, c)?;
        for _ in 0..power {
            cells.push(cell);
        }
    }
    Ok(Monomial::from_cells(cells))
}

impl FromStr for BinomialElement {
    type Err = Error;

    /// Parses `term-term` or a single `term`; a term is a `*`-joined list of
    /// factors `x[r,c]` (optionally `x[r,c]^k`), or `1`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty binomial".into()));
        }
        let parts: Vec<&str> = compact.split('-').collect();
        match parts.as_slice() {
            [m] => Ok(BinomialElement::monomial(parse_term(m)?)),
            [a, b] => Ok(BinomialElement::binomial(parse_term(a)?, parse_term(b)?)),
            _ => Err(Error::Parse(format!("expected term-term, got {s:?}"))),
        }
    }
}

/// A polynomial with integer coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn square(&self) -> Polynomial {
        self.mul(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let abs = c.unsigned_abs();
            if abs == 1 {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
