//! Exact Gröbner computations for binomial ideals under lexicographic orders.
//!
//! Everything works over a field of characteristic zero. Generators are pure
//! differences of monomials (or monomials), which keeps every intermediate
//! element of the same shape with coefficients `+1`/`-1`; only membership of
//! general polynomials (for instance `f^2`) needs integer coefficients, and
//! those are handled through monomial normal forms.

mod engine;
mod poly;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::classify::{MarkChoice, Marking};
use crate::error::{Error, Result};
use crate::grid::{Cell, Configuration};

pub use poly::{BinomialElement, Monomial, Polynomial};

use engine::{Elem, Exp, Reducer};

/// Default cap on the degree of any intermediate basis element.
pub const DEFAULT_DEGREE_CAP: u32 = 24;
/// Default cap used while saturating (the auxiliary variable inflates degrees).
pub const DEFAULT_SATURATION_CAP: u32 = 30;

/// A total order on a finite set of variables; rank 0 is the largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableRanking {
    order: Vec<Cell>,
    index: BTreeMap<Cell, usize>,
}

impl VariableRanking {
    pub fn new(order: Vec<Cell>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, c) in order.iter().enumerate() {
            if index.insert(*c, i).is_some() {
                return Err(Error::Parse(format!("variable {c} ranked twice")));
            }
        }
        Ok(VariableRanking { order, index })
    }

    /// Row-major ranking: `x[1,1] > x[1,2] > ... > x[2,1] > ...`.
    pub fn row_major<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        let order: Vec<Cell> = set.into_iter().collect();
        let index = order.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        VariableRanking { order, index }
    }

    pub fn for_configuration(config: &Configuration) -> Self {
        Self::row_major(config.vertex_set())
    }

    pub fn cells(&self) -> &[Cell] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn rank(&self, cell: Cell) -> Option<usize> {
        self.index.get(&cell).copied()
    }

    /// Lexicographic comparison induced by the ranking. Variables outside the
    /// ranking compare below every ranked variable, in cell order.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let key = |c: &Cell| match self.index.get(c) {
            Some(&i) => (0usize, i, *c),
            None => (1usize, 0, *c),
        };
        let mut vars: Vec<Cell> = a.variables().chain(b.variables()).collect();
        vars.sort_by_key(key);
        vars.dedup();
        for v in vars {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// Puts `lead` above `tail`; `None` when the element is zero.
    pub fn orient(&self, f: &BinomialElement) -> Option<BinomialElement> {
        match &f.tail {
            None => Some(f.clone()),
            Some(t) => match self.compare(&f.lead, t) {
                Ordering::Equal => None,
                Ordering::Greater => Some(f.clone()),
                Ordering::Less => Some(BinomialElement::binomial(t.clone(), f.lead.clone())),
            },
        }
    }

    fn to_dense(&self, m: &Monomial, offset: usize) -> Result<Exp> {
        let mut e = vec![0u16; self.order.len() + offset];
        for (c, k) in m.exponents() {
            let i = self.rank(*c).ok_or(Error::UnknownVariable(*c))?;
            e[i + offset] = *k as u16;
        }
        Ok(e)
    }

    fn to_sparse(&self, e: &[u16], offset: usize) -> Monomial {
        Monomial::from_exponents(
            e[offset..]
                .iter()
                .enumerate()
                .map(|(i, k)| (self.order[i], *k as u32)),
        )
    }

    fn elem_to_dense(&self, f: &BinomialElement, offset: usize) -> Result<Option<Elem>> {
        let lead = self.to_dense(&f.lead, offset)?;
        let tail = f
            .tail
            .as_ref()
            .map(|t| self.to_dense(t, offset))
            .transpose()?;
        Ok(Elem::from_terms(Some(lead), tail))
    }

    fn elem_to_sparse(&self, e: &Elem, offset: usize) -> BinomialElement {
        BinomialElement {
            lead: self.to_sparse(&e.lead, offset),
            tail: e.tail.as_ref().map(|t| self.to_sparse(t, offset)),
        }
    }
}

/// A reduced lexicographic Gröbner basis together with its ranking.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    elements: Vec<BinomialElement>,
    ranking: VariableRanking,
    dense: Vec<Elem>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ranking == other.ranking && self.elements == other.elements
    }
}

impl GroebnerBasis {
    /// Elements sorted by leading monomial, ascending in the ranking's lex order.
    pub fn elements(&self) -> &[BinomialElement] {
        &self.elements
    }

    pub fn ranking(&self) -> &VariableRanking {
        &self.ranking
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.elements.iter().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// Leading monomials, in element order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|e| e.lead.clone()).collect()
    }

    /// Whether the binomial `f` lies in the ideal.
    pub fn contains(&self, f: &BinomialElement) -> Result<bool> {
        let Some(e) = self.ranking.elem_to_dense(f, 0)? else {
            return Ok(true);
        };
        Ok(Reducer::new(&self.dense).nf_elem(&e).is_none())
    }

    /// Whether the polynomial `p` lies in the ideal.
    pub fn contains_polynomial(&self, p: &Polynomial) -> Result<bool> {
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            terms.insert(self.ranking.to_dense(m, 0)?, *c);
        }
        Ok(Reducer::new(&self.dense).nf_poly(&terms).is_empty())
    }

    /// Normal form of `f` modulo the basis (`None` when it reduces to zero).
    pub fn normal_form(&self, f: &BinomialElement) -> Result<Option<BinomialElement>> {
        let Some(e) = self.ranking.elem_to_dense(f, 0)? else {
            return Ok(None);
        };
        Ok(Reducer::new(&self.dense)
            .nf_elem(&e)
            .map(|r| self.ranking.elem_to_sparse(&r, 0)))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under the lex order
/// induced by `ranking`.
pub fn reduced_basis(
    gens: &[BinomialElement],
    ranking: &VariableRanking,
    degree_cap: u32,
) -> Result<GroebnerBasis> {
    let mut dense = Vec::new();
    for g in gens {
        if let Some(e) = ranking.elem_to_dense(g, 0)? {
            dense.push(e);
        }
    }
    let gb = engine::reduced_groebner(dense, degree_cap)?;
    Ok(GroebnerBasis {
        elements: gb.iter().map(|e| ranking.elem_to_sparse(e, 0)).collect(),
        ranking: ranking.clone(),
        dense: gb,
    })
}

/// Whether `f` belongs to the ideal whose reduced basis is `basis`.
pub fn member(f: &BinomialElement, basis: &GroebnerBasis) -> Result<bool> {
    basis.contains(f)
}

/// The adjacent minors of `config` as binomials `ad - bc`.
pub fn configuration_generators(config: &Configuration) -> Vec<BinomialElement> {
    config.iter().map(BinomialElement::from_unit).collect()
}

/// Reduced basis of I(C) under `ranking`.
pub fn configuration_basis(
    config: &Configuration,
    ranking: &VariableRanking,
    degree_cap: u32,
) -> Result<GroebnerBasis> {
    reduced_basis(&configuration_generators(config), ranking, degree_cap)
}

/// Generators of the saturation `(gens) : (prod of all ranked variables)^inf`.
///
/// An auxiliary variable `t` is ranked above every variable, the element
/// `t * prod(x) - 1` is adjoined, and the `t`-free part of the reduced lex
/// basis is returned. The result is itself the reduced basis of the
/// saturation under `ranking`.
pub fn saturate(
    gens: &[BinomialElement],
    ranking: &VariableRanking,
    degree_cap: u32,
) -> Result<Vec<BinomialElement>> {
    let n = ranking.len();
    let mut dense = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        if let Some(e) = ranking.elem_to_dense(g, 1)? {
            dense.push(e);
        }
    }
    dense.push(Elem {
        lead: vec![1u16; n + 1],
        tail: Some(vec![0u16; n + 1]),
    });
    let gb = engine::reduced_groebner(dense, degree_cap)?;
    Ok(gb
        .iter()
        .filter(|e| e.lead[0] == 0 && e.tail.as_ref().is_none_or(|t| t[0] == 0))
        .map(|e| ranking.elem_to_sparse(e, 1))
        .collect())
}

/// Certifies that I(C) is not radical through `f`: `f` is not in the ideal
/// while `f^2` is.
pub fn nonradical_witness_check(
    config: &Configuration,
    f: &BinomialElement,
    degree_cap: u32,
) -> Result<bool> {
    let ranking = VariableRanking::row_major(config.vertex_set().into_iter().chain(f.variables()));
    let gb = configuration_basis(config, &ranking, degree_cap)?;
    if gb.contains(f)? {
        return Ok(false);
    }
    gb.contains_polynomial(&f.to_polynomial().square())
}

/// Builds a ranking under which every mark is the lex-initial monomial of its
/// minor.
///
/// Vertex rows are ranked top to bottom. Inside a row, a minor anchored in
/// that row orders its two top vertices (the marked one first); consecutive
/// constrained pairs are merged into a chain by appending or prepending the
/// next vertex, and unconstrained gaps start a new chain. The result is
/// checked against every minor before being returned.
pub fn marked_order(config: &Configuration, marking: &Marking) -> Result<VariableRanking> {
    let vertices = config.vertex_set();
    let mut rows: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for v in &vertices {
        rows.entry(v.row).or_default().push(v.col);
    }
    let mut order = Vec::with_capacity(vertices.len());
    for (row, cols) in rows {
        let mut chain: std::collections::VecDeque<u32> = std::collections::VecDeque::new();
        for (k, &col) in cols.iter().enumerate() {
            let constraint = if k > 0 && cols[k - 1] + 1 == col {
                config
                    .iter()
                    .find(|m| m.anchor.row == row && m.anchor.col == cols[k - 1])
                    .map(|m| {
                        marking.get(m).ok_or_else(|| {
                            Error::VerificationFailed(format!("minor {m} carries no mark"))
                        })
                    })
                    .transpose()?
            } else {
                None
            };
            match constraint {
                Some(MarkChoice::Diagonal) => chain.push_back(col),
                Some(MarkChoice::AntiDiagonal) => chain.push_front(col),
                None => {
                    order.extend(chain.drain(..).map(|c| Cell { row, col: c }));
                    chain.push_back(col);
                }
            }
        }
        order.extend(chain.drain(..).map(|c| Cell { row, col: c }));
    }
    let ranking = VariableRanking::new(order)?;
    for m in config.iter() {
        let (mark, other) = marking
            .mark_and_other(m)
            .ok_or_else(|| Error::VerificationFailed(format!("minor {m} carries no mark")))?;
        if ranking.compare(&mark, &other) != Ordering::Greater {
            return Err(Error::VerificationFailed(format!(
                "mark {mark} of minor {m} is not initial"
            )));
        }
    }
    Ok(ranking)
}
