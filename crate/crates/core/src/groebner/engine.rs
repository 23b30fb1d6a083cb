//! Dense binomial Buchberger completion.
//!
//! Exponent vectors are indexed by variable rank, rank 0 being the largest
//! variable, so the derived `Ord` on `Vec<u16>` is exactly the lexicographic
//! term order. Every element is either a pure difference `lead - tail` of two
//! monomials or a single monomial; S-pairs and reductions never leave that
//! shape, so no coefficients are stored.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};

pub(crate) type Exp = Vec<u16>;

fn mask(e: &[u16]) -> u64 {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
}

pub(crate) fn degree(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

pub(crate) fn divides(d: &[u16], m: &[u16]) -> bool {
    d.iter().zip(m).all(|(a, b)| a <= b)
}

fn quotient(m: &[u16], d: &[u16]) -> Exp {
    m.iter().zip(d).map(|(a, b)| a - b).collect()
}

fn product(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn lcm(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `lead - tail`, or the monomial `lead` when `tail` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Elem {
    pub lead: Exp,
    pub tail: Option<Exp>,
}

impl Elem {
    /// Builds `a - b` from two optional terms (`None` meaning zero), oriented
    /// so that the lead is the larger term. Returns `None` for zero.
    pub fn from_terms(a: Option<Exp>, b: Option<Exp>) -> Option<Elem> {
        match (a, b) {
            (None, None) => None,
            (Some(m), None) | (None, Some(m)) => Some(Elem {
                lead: m,
                tail: None,
            }),
            (Some(a), Some(b)) => {
                if a == b {
                    None
                } else if a > b {
                    Some(Elem {
                        lead: a,
                        tail: Some(b),
                    })
                } else {
                    Some(Elem {
                        lead: b,
                        tail: Some(a),
                    })
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        let d = degree(&self.lead);
        self.tail.as_ref().map_or(d, |t| d.max(degree(t)))
    }
}

struct Indexed {
    elem: Elem,
    mask: u64,
}

/// Normal form of a single monomial: either zero (`None`) or the standard
/// monomial it rewrites to. Coefficients never change for pure differences.
fn nf_monomial_in(basis: &[Indexed], mut m: Exp) -> Option<Exp> {
    'outer: loop {
        let mm = mask(&m);
        for b in basis {
            if b.mask & !mm == 0 && divides(&b.elem.lead, &m) {
                let t = b.elem.tail.as_ref()?;
                m = product(&quotient(&m, &b.elem.lead), t);
                continue 'outer;
            }
        }
        return Some(m);
    }
}

fn s_element(f: &Elem, g: &Elem) -> Option<Elem> {
    let l = lcm(&f.lead, &g.lead);
    let fa = f.tail.as_ref().map(|t| product(&quotient(&l, &f.lead), t));
    let ga = g.tail.as_ref().map(|t| product(&quotient(&l, &g.lead), t));
    Elem::from_terms(fa, ga)
}

/// Reduced lexicographic Gröbner basis of the ideal generated by `gens`.
///
/// The result is sorted by leading monomial (ascending), which makes it a
/// canonical value for a fixed variable order.
pub(crate) fn reduced_groebner(gens: Vec<Elem>, degree_cap: u32) -> Result<Vec<Elem>> {
    let mut basis: Vec<Indexed> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: BTreeSet<(u32, Exp, usize, usize)> = BTreeSet::new();

    let push = |basis: &mut Vec<Indexed>,
                pending: &mut HashSet<(usize, usize)>,
                queue: &mut BTreeSet<(u32, Exp, usize, usize)>,
                elem: Elem| {
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if b.elem.tail.is_none() && elem.tail.is_none() {
                continue;
            }
            if coprime(&b.elem.lead, &elem.lead) {
                continue;
            }
            let l = lcm(&b.elem.lead, &elem.lead);
            pending.insert((i, j));
            queue.insert((degree(&l), l, i, j));
        }
        let m = mask(&elem.lead);
        basis.push(Indexed { elem, mask: m });
    };

    for g in gens {
        if g.degree() > degree_cap {
            return Err(Error::DegreeCapExceeded {
                cap: degree_cap,
                degree: g.degree(),
            });
        }
        let lead = nf_monomial_in(&basis, g.lead.clone());
        let tail = match g.tail.clone() {
            Some(t) => nf_monomial_in(&basis, t),
            None => None,
        };
        if let Some(e) = Elem::from_terms(lead, tail) {
            push(&mut basis, &mut pending, &mut queue, e);
        }
    }

    while let Some((_, l, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].elem.lead, &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let Some(s) = s_element(&basis[i].elem, &basis[j].elem) else {
            continue;
        };
        let lead = nf_monomial_in(&basis, s.lead);
        let tail = s.tail.and_then(|t| nf_monomial_in(&basis, t));
        if let Some(h) = Elem::from_terms(lead, tail) {
            if h.degree() > degree_cap {
                return Err(Error::DegreeCapExceeded {
                    cap: degree_cap,
                    degree: h.degree(),
                });
            }
            push(&mut basis, &mut pending, &mut queue, h);
        }
    }

    Ok(interreduce(basis.into_iter().map(|b| b.elem).collect()))
}

/// Minimalizes and tail-reduces a Gröbner basis.
fn interreduce(mut elems: Vec<Elem>) -> Vec<Elem> {
    // `None` tails sort first, so a monomial element wins over binomials
    // sharing its lead.
    elems.sort();
    elems.dedup_by(|a, b| a.lead == b.lead);
    let leads: Vec<Exp> = elems.iter().map(|e| e.lead.clone()).collect();
    let minimal: Vec<Elem> = elems
        .into_iter()
        .enumerate()
        .filter(|(idx, e)| {
            !leads
                .iter()
                .enumerate()
                .any(|(k, l)| k != *idx && divides(l, &e.lead))
        })
        .map(|(_, e)| e)
        .collect();
    let indexed: Vec<Indexed> = minimal
        .iter()
        .map(|e| Indexed {
            elem: e.clone(),
            mask: mask(&e.lead),
        })
        .collect();
    let mut out: Vec<Elem> = minimal
        .into_iter()
        .map(|e| {
            let tail = e.tail.and_then(|t| nf_monomial_in(&indexed, t));
            Elem { lead: e.lead, tail }
        })
        .collect();
    out.sort();
    out
}

/// A finished basis with divisibility masks, ready for normal forms.
pub(crate) struct Reducer {
    basis: Vec<Indexed>,
}

impl Reducer {
    pub fn new(elems: &[Elem]) -> Self {
        Reducer {
            basis: elems
                .iter()
                .map(|e| Indexed {
                    elem: e.clone(),
                    mask: mask(&e.lead),
                })
                .collect(),
        }
    }

    pub fn nf_monomial(&self, m: Exp) -> Option<Exp> {
        nf_monomial_in(&self.basis, m)
    }

    pub fn nf_elem(&self, e: &Elem) -> Option<Elem> {
        Elem::from_terms(
            self.nf_monomial(e.lead.clone()),
            e.tail.clone().and_then(|t| self.nf_monomial(t)),
        )
    }

    /// Normal form of a polynomial with integer coefficients; zero-coefficient
    /// terms are dropped.
    pub fn nf_poly(&self, terms: &BTreeMap<Exp, i64>) -> BTreeMap<Exp, i64> {
        let mut out: BTreeMap<Exp, i64> = BTreeMap::new();
        for (m, &c) in terms {
            if let Some(r) = self.nf_monomial(m.clone()) {
                *out.entry(r).or_default() += c;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
}
