//! Independent oracles shared by the integration tests. None of these reuse
//! the library's decision procedures; they work from definitions.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use adjminor::fixtures::{fixture, Fixture};
use adjminor::groebner::{BinomialElement, Monomial, Polynomial, VariableRanking};
use adjminor::{Cell, Configuration, UnitMinor};

pub fn fx(name: &str) -> Fixture {
    fixture(name).unwrap()
}

pub fn cfg(anchors: &[(u32, u32)]) -> Configuration {
    Configuration::from_anchors(anchors).unwrap()
}

pub fn cell(row: u32, col: u32) -> Cell {
    Cell { row, col }
}

/// All non-empty configurations whose anchors lie in the n x n anchor grid.
pub fn grid_configurations(n: u32) -> Vec<Configuration> {
    let anchors: Vec<(u32, u32)> = (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c))).collect();
    (1u32..(1 << anchors.len()))
        .map(|mask| {
            let chosen: Vec<(u32, u32)> = anchors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| *a)
                .collect();
            cfg(&chosen)
        })
        .collect()
}

/// Parses a label word such as `bbh` into a monomial.
pub fn word(f: &Fixture, w: &str) -> Monomial {
    Monomial::from_cells(w.chars().map(|ch| f.cell(&ch.to_string())))
}

/// `"af-be"` in fixture labels.
pub fn labelled(f: &Fixture, text: &str) -> BinomialElement {
    let (l, r) = text.split_once('-').unwrap();
    BinomialElement::binomial(word(f, l.trim()), word(f, r.trim()))
}

/// A binomial up to sign: the unordered pair of its terms.
pub fn unsigned(b: &BinomialElement) -> BTreeSet<Monomial> {
    let mut s: BTreeSet<Monomial> = [b.lead.clone()].into_iter().collect();
    if let Some(t) = &b.tail {
        s.insert(t.clone());
    }
    s
}

/// Admissible sets straight from the definition, over all 2^|V| subsets.
pub fn brute_admissible(config: &Configuration) -> BTreeSet<BTreeSet<Cell>> {
    let vertices: Vec<Cell> = config.vertex_set().into_iter().collect();
    assert!(vertices.len() <= 20);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << vertices.len()) {
        let w: BTreeSet<Cell> = vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| *c)
            .collect();
        let ok = config.iter().all(|m| {
            let v = m.vertices();
            let hit: Vec<bool> = v.iter().map(|c| w.contains(c)).collect();
            let none = hit.iter().all(|h| !h);
            // edges: ab, ac, bd, cd with a b / c d
            let edge = (hit[0] && hit[1])
                || (hit[0] && hit[2])
                || (hit[1] && hit[3])
                || (hit[2] && hit[3]);
            none || edge
        });
        if ok {
            out.insert(w);
        }
    }
    out
}

/// Whether some choice of one monomial per minor gives pairwise coprime
/// marks, by exhaustive search over all 2^|C| markings.
pub fn some_coprime_marking(config: &Configuration) -> Option<BTreeMap<UnitMinor, bool>> {
    let minors: Vec<UnitMinor> = config.iter().copied().collect();
    assert!(minors.len() <= 16);
    'outer: for mask in 0u32..(1 << minors.len()) {
        let mut used = BTreeSet::new();
        for (i, m) in minors.iter().enumerate() {
            let cells = if mask & (1 << i) == 0 {
                m.diagonal()
            } else {
                m.anti_diagonal()
            };
            for c in cells {
                if !used.insert(c) {
                    continue 'outer;
                }
            }
        }
        return Some(
            minors
                .iter()
                .enumerate()
                .map(|(i, m)| (*m, mask & (1 << i) == 0))
                .collect(),
        );
    }
    None
}

fn leading(p: &Polynomial, r: &VariableRanking) -> Option<(Monomial, i64)> {
    p.terms()
        .iter()
        .max_by(|a, b| r.compare(a.0, b.0))
        .map(|(m, c)| (m.clone(), *c))
}

fn quotient(m: &Monomial, d: &Monomial) -> Monomial {
    Monomial::from_exponents(m.exponents().iter().map(|(c, e)| (*c, e - d.exponent(*c))))
}

fn scaled(p: &Polynomial, m: &Monomial, k: i64) -> Polynomial {
    let mut out = Polynomial::zero();
    for (t, c) in p.terms() {
        out.add_term(t.mul(m), c * k);
    }
    out
}

fn sub(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = a.clone();
    for (t, c) in b.terms() {
        out.add_term(t.clone(), -c);
    }
    out
}

/// Remainder of multivariate division by `gens` (leads taken w.r.t. `r`);
/// every generator is monic up to sign.
pub fn remainder(p: &Polynomial, gens: &[Polynomial], r: &VariableRanking) -> Polynomial {
    let mut p = p.clone();
    let mut rem = Polynomial::zero();
    while let Some((lm, lc)) = leading(&p, r) {
        let divisor = gens.iter().find_map(|g| {
            let (gl, gc) = leading(g, r)?;
            gl.divides(&lm).then_some((g, gl, gc))
        });
        match divisor {
            Some((g, gl, gc)) => {
                assert_eq!(lc % gc, 0);
                p = sub(&p, &scaled(g, &quotient(&lm, &gl), lc / gc));
            }
            None => {
                rem.add_term(lm.clone(), lc);
                let mut single = Polynomial::zero();
                single.add_term(lm, lc);
                p = sub(&p, &single);
            }
        }
    }
    rem
}

/// Buchberger's criterion checked with plain polynomial arithmetic: every
/// S-polynomial of the generators reduces to zero.
pub fn s_pairs_reduce_to_zero(gens: &[BinomialElement], r: &VariableRanking) -> bool {
    let polys: Vec<Polynomial> = gens.iter().map(|g| g.to_polynomial()).collect();
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            let (li, ci) = leading(&polys[i], r).unwrap();
            let (lj, cj) = leading(&polys[j], r).unwrap();
            let l = Monomial::from_exponents(
                li.variables()
                    .chain(lj.variables())
                    .map(|v| (v, li.exponent(v).max(lj.exponent(v))))
                    .collect::<BTreeMap<_, _>>(),
            );
            let s = sub(
                &scaled(&polys[i], &quotient(&l, &li), cj),
                &scaled(&polys[j], &quotient(&l, &lj), ci),
            );
            if !remainder(&s, &polys, r).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Every mark is the larger monomial of its minor under `r`.
pub fn marks_initial(
    config: &Configuration,
    marks: &BTreeMap<UnitMinor, bool>,
    r: &VariableRanking,
) -> bool {
    config.iter().all(|m| {
        let diag = Monomial::from_cells(m.diagonal());
        let anti = Monomial::from_cells(m.anti_diagonal());
        let want = if marks[m] {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        r.compare(&diag, &anti) == want
    })
}
