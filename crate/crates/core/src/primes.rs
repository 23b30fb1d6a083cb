//! Admissible sets, the prime components P_W(C) and minimal primes of I(C).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::grid::{connected_components, is_special, Cell, Configuration, GeneralMinor, UnitMinor};
use crate::groebner::{BinomialElement, Monomial};

/// Default cap on the number of admissible sets enumerated.
pub const DEFAULT_ADMISSIBLE_CAP: usize = 100_000;

/// A vertex set meeting every minor either not at all or in a superset of
/// one of its edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleSet {
    cells: BTreeSet<Cell>,
}

impl AdmissibleSet {
    /// Validates `cells` against `config`.
    pub fn new(config: &Configuration, cells: BTreeSet<Cell>) -> Result<Self> {
        if is_admissible(config, &cells) {
            Ok(AdmissibleSet { cells })
        } else {
            Err(Error::NotAdmissible)
        }
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

fn meets_properly(m: &UnitMinor, w: &BTreeSet<Cell>) -> bool {
    let hit = m.vertices().iter().filter(|v| w.contains(v)).count();
    hit == 0 || m.as_general().has_edge_in(w)
}

/// The admissibility predicate, including `W ⊆ V(C)`.
pub fn is_admissible(config: &Configuration, w: &BTreeSet<Cell>) -> bool {
    let vertices = config.vertex_set();
    w.is_subset(&vertices) && config.iter().all(|m| meets_properly(m, w))
}

/// All admissible subsets of V(C), ordered by size and then lexicographically.
pub fn admissible_sets(config: &Configuration, cap: usize) -> Result<Vec<AdmissibleSet>> {
    let vertices: Vec<Cell> = config.vertex_set().into_iter().collect();
    // minors whose last vertex (in enumeration order) is the k-th vertex
    let mut closing: Vec<Vec<UnitMinor>> = vec![Vec::new(); vertices.len()];
    for m in config.iter() {
        let last = m
            .vertices()
            .iter()
            .map(|v| vertices.binary_search(v).expect("vertex of config"))
            .max()
            .expect("four vertices");
        closing[last].push(*m);
    }
    let mut out = Vec::new();
    let mut current = BTreeSet::new();
    enumerate(&vertices, &closing, 0, &mut current, &mut out, cap)?;
    out.sort_by(|a: &BTreeSet<Cell>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out
        .into_iter()
        .map(|cells| AdmissibleSet { cells })
        .collect())
}

fn enumerate(
    vertices: &[Cell],
    closing: &[Vec<UnitMinor>],
    k: usize,
    current: &mut BTreeSet<Cell>,
    out: &mut Vec<BTreeSet<Cell>>,
    cap: usize,
) -> Result<()> {
    if k == vertices.len() {
        if out.len() >= cap {
            return Err(Error::CapExceeded {
                what: "admissible sets",
                cap,
            });
        }
        out.push(current.clone());
        return Ok(());
    }
    for include in [false, true] {
        if include {
            current.insert(vertices[k]);
        }
        if closing[k].iter().all(|m| meets_properly(m, current)) {
            enumerate(vertices, closing, k + 1, current, out, cap)?;
        }
        if include {
            current.remove(&vertices[k]);
        }
    }
    Ok(())
}

/// Every 2-minor whose full coordinate rectangle lies inside `region`.
pub fn inner_minors(region: &BTreeSet<Cell>) -> BTreeSet<GeneralMinor> {
    let mut out = BTreeSet::new();
    let rows: BTreeSet<u32> = region.iter().map(|c| c.row).collect();
    let cols: BTreeSet<u32> = region.iter().map(|c| c.col).collect();
    for &r1 in &rows {
        for &r2 in rows.range(r1 + 1..) {
            for &c1 in &cols {
                for &c2 in cols.range(c1 + 1..) {
                    let g = GeneralMinor {
                        row_lo: r1,
                        row_hi: r2,
                        col_lo: c1,
                        col_hi: c2,
                    };
                    if g.rectangle().all(|c| region.contains(&c)) {
                        out.insert(g);
                    }
                }
            }
        }
    }
    out
}

/// Which region the inner minors of P_W are taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnerRegion {
    /// V(C) \ W.
    #[default]
    Complement,
    /// V(C'), where C' consists of the minors of C disjoint from W.
    AvoidingMinors,
}

/// The ideal P_W(C): the variables of W plus all inner minors of the region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeComponent {
    config: Configuration,
    w: BTreeSet<Cell>,
    inner: BTreeSet<GeneralMinor>,
}

impl PrimeComponent {
    pub fn configuration(&self) -> &Configuration {
        &self.config
    }

    pub fn w(&self) -> &BTreeSet<Cell> {
        &self.w
    }

    pub fn inner(&self) -> &BTreeSet<GeneralMinor> {
        &self.inner
    }

    /// Generators: one monomial per variable of W, then the inner minors.
    pub fn generators(&self) -> Vec<BinomialElement> {
        self.w
            .iter()
            .map(|c| BinomialElement::monomial(Monomial::var(*c)))
            .chain(self.inner.iter().map(BinomialElement::from_minor))
            .collect()
    }

    /// C': the minors of C whose vertices avoid W.
    pub fn avoiding_configuration(&self) -> Configuration {
        self.config
            .filter(|m| m.vertices().iter().all(|v| !self.w.contains(v)))
    }
}

pub fn prime_component(config: &Configuration, w: &BTreeSet<Cell>) -> Result<PrimeComponent> {
    prime_component_with(config, w, InnerRegion::Complement)
}

pub fn prime_component_with(
    config: &Configuration,
    w: &BTreeSet<Cell>,
    region: InnerRegion,
) -> Result<PrimeComponent> {
    if !is_admissible(config, w) {
        return Err(Error::NotAdmissible);
    }
    let cells: BTreeSet<Cell> = match region {
        InnerRegion::Complement => config.vertex_set().difference(w).copied().collect(),
        InnerRegion::AvoidingMinors => config
            .filter(|m| m.vertices().iter().all(|v| !w.contains(v)))
            .vertex_set(),
    };
    Ok(PrimeComponent {
        config: config.clone(),
        w: w.clone(),
        inner: inner_minors(&cells),
    })
}

/// Whether P_V ⊆ P_W.
pub fn component_contains(pv: &PrimeComponent, pw: &PrimeComponent) -> Result<bool> {
    if pv.config != pw.config {
        return Err(Error::MismatchedConfiguration);
    }
    Ok(pv.w.is_subset(&pw.w) && pv.inner.difference(&pw.inner).all(|g| g.has_edge_in(&pw.w)))
}

/// P_W for every admissible W, in admissible-set order.
pub fn all_prime_components(config: &Configuration, cap: usize) -> Result<Vec<PrimeComponent>> {
    admissible_sets(config, cap)?
        .iter()
        .map(|w| prime_component(config, w.cells()))
        .collect()
}

/// The minimal primes of I(C) for a special configuration, ordered by |W|
/// and then lexicographically by W.
pub fn minimal_primes(config: &Configuration, cap: usize) -> Result<Vec<PrimeComponent>> {
    if !is_special(config) {
        return Err(Error::NotSpecial);
    }
    let all = all_prime_components(config, cap)?;
    // P_V = P_W forces V = W, so distinct admissible sets never collapse.
    // A component below P_W has a strictly smaller W, so it sits earlier.
    let vertices: Vec<Cell> = config.vertex_set().into_iter().collect();
    let words = vertices.len().div_ceil(64);
    let masks: Vec<Vec<u64>> = all
        .iter()
        .map(|p| {
            let mut m = vec![0u64; words];
            for c in &p.w {
                let k = vertices
                    .binary_search(c)
                    .expect("admissible sets lie in V(C)");
                m[k / 64] |= 1 << (k % 64);
            }
            m
        })
        .collect();
    let subset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & !y == 0);
    let mut minimal = Vec::new();
    for (i, p) in all.iter().enumerate() {
        let mut is_min = true;
        for (j, q) in all[..i].iter().enumerate() {
            if q.w.len() < p.w.len() && subset(&masks[j], &masks[i]) && component_contains(q, p)? {
                is_min = false;
                break;
            }
        }
        if is_min {
            minimal.push(p.clone());
        }
    }
    Ok(minimal)
}

/// Number of connected components of C', used by table criteria.
pub(crate) fn avoiding_components(p: &PrimeComponent) -> Vec<Configuration> {
    connected_components(&p.avoiding_configuration())
}
