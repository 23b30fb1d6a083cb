//! Contingency tables on V(C), adjacent moves and fiber connectivity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{radical_verdict, RadicalStatus};
use crate::error::{Error, Result};
use crate::grid::{connected_components, Cell, Configuration, UnitMinor};
use crate::primes::{avoiding_components, minimal_primes, PrimeComponent, DEFAULT_ADMISSIBLE_CAP};

/// Default cap on the number of tables visited by a fiber search.
pub const DEFAULT_NODE_CAP: usize = 200_000;

/// A non-negative integer table. Only non-zero entries are stored, so two
/// tables are equal exactly when they agree on every cell.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Table {
    entries: BTreeMap<Cell, u64>,
}

impl Table {
    pub fn new<I: IntoIterator<Item = (Cell, u64)>>(entries: I) -> Self {
        let mut map = BTreeMap::new();
        for (c, v) in entries {
            *map.entry(c).or_insert(0) += v;
        }
        map.retain(|_, v| *v > 0);
        Table { entries: map }
    }

    pub fn get(&self, cell: Cell) -> u64 {
        self.entries.get(&cell).copied().unwrap_or(0)
    }

    /// Non-zero entries in cell order.
    pub fn entries(&self) -> &BTreeMap<Cell, u64> {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn sum_over(&self, cells: &BTreeSet<Cell>) -> u64 {
        cells.iter().map(|c| self.get(*c)).sum()
    }

    /// Fails on the first non-zero entry outside V(C).
    pub fn check_support(&self, config: &Configuration) -> Result<()> {
        let vertices = config.vertex_set();
        match self.entries.keys().find(|c| !vertices.contains(c)) {
            Some(c) => Err(Error::SupportViolation(*c)),
            None => Ok(()),
        }
    }

    fn add(&self, cell: Cell, delta: i64) -> Option<Table> {
        let v = self.get(cell) as i64 + delta;
        if v < 0 {
            return None;
        }
        let mut t = self.clone();
        if v == 0 {
            t.entries.remove(&cell);
        } else {
            t.entries.insert(cell, v as u64);
        }
        Some(t)
    }
}

/// `sign * D(Q)`: +1 on the diagonal cells of the box, -1 on the anti-diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub minor: UnitMinor,
    pub sign: i8,
}

impl Move {
    /// The moved table, or `None` if an entry would become negative.
    pub fn apply(&self, t: &Table) -> Option<Table> {
        let s = self.sign as i64;
        let [a, d] = self.minor.diagonal();
        let [b, c] = self.minor.anti_diagonal();
        t.add(a, s)?.add(d, s)?.add(b, -s)?.add(c, -s)
    }
}

fn all_moves(config: &Configuration) -> Vec<Move> {
    config
        .iter()
        .flat_map(|m| [1i8, -1].map(|sign| Move { minor: *m, sign }))
        .collect()
}

/// Row and column sums of a table restricted to one vertex set, indexed by
/// the row / column numbers present in that set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentMargins {
    pub rows: Vec<(u32, u64)>,
    pub cols: Vec<(u32, u64)>,
}

fn margins_on(t: &Table, cells: &BTreeSet<Cell>) -> ComponentMargins {
    let mut rows: BTreeMap<u32, u64> = BTreeMap::new();
    let mut cols: BTreeMap<u32, u64> = BTreeMap::new();
    for c in cells {
        *rows.entry(c.row).or_default() += t.get(*c);
        *cols.entry(c.col).or_default() += t.get(*c);
    }
    ComponentMargins {
        rows: rows.into_iter().collect(),
        cols: cols.into_iter().collect(),
    }
}

/// Margins per edge-connected component of C, in component order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MarginVector {
    pub components: Vec<ComponentMargins>,
}

pub fn margins(t: &Table, config: &Configuration) -> Result<MarginVector> {
    t.check_support(config)?;
    Ok(MarginVector {
        components: connected_components(config)
            .iter()
            .map(|comp| margins_on(t, &comp.vertex_set()))
            .collect(),
    })
}

/// All tables reachable from `t` through moves that keep every entry
/// non-negative.
pub fn bfs_fiber(config: &Configuration, t: &Table, node_cap: usize) -> Result<BTreeSet<Table>> {
    t.check_support(config)?;
    let moves = all_moves(config);
    let mut seen: BTreeSet<Table> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.clone());
    queue.push_back(t.clone());
    while let Some(cur) = queue.pop_front() {
        for mv in &moves {
            if let Some(next) = mv.apply(&cur) {
                if !seen.contains(&next) {
                    if seen.len() >= node_cap {
                        return Err(Error::CapExceeded {
                            what: "fiber nodes",
                            cap: node_cap,
                        });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// Which clause of the component criterion accepted a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionClause {
    /// Both tables put positive mass on W.
    MassOnW,
    /// The tables differ only on V(C') and agree in the margins of each
    /// connected piece of C'.
    EqualMarginsOffW,
}

/// The criterion for the pair (T, T2) relative to one prime component.
pub fn pair_clause(t: &Table, t2: &Table, p: &PrimeComponent) -> Result<Option<CriterionClause>> {
    t.check_support(p.configuration())?;
    t2.check_support(p.configuration())?;
    if t.sum_over(p.w()) >= 1 && t2.sum_over(p.w()) >= 1 {
        return Ok(Some(CriterionClause::MassOnW));
    }
    let pieces = avoiding_components(p);
    let region: BTreeSet<Cell> = pieces.iter().flat_map(|c| c.vertex_set()).collect();
    let differ = t
        .entries()
        .keys()
        .chain(t2.entries().keys())
        .any(|c| t.get(*c) != t2.get(*c) && !region.contains(c));
    if differ {
        return Ok(None);
    }
    let equal = pieces.iter().all(|piece| {
        let cells = piece.vertex_set();
        margins_on(t, &cells) == margins_on(t2, &cells)
    });
    Ok(equal.then_some(CriterionClause::EqualMarginsOffW))
}

pub fn pair_in_component(t: &Table, t2: &Table, p: &PrimeComponent) -> Result<bool> {
    Ok(pair_clause(t, t2, p)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityStatus {
    Connected,
    Disconnected,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConnectivityEvidence {
    /// The criterion fails for the minimal prime with this W.
    FailingComponent(BTreeSet<Cell>),
    /// The criterion holds for every minimal prime and I(C) is radical.
    CriterionRadical,
    /// The criterion holds but radicality of I(C) is not established.
    RadicalityUnconfirmed(RadicalStatus),
    /// Decided by exhausting the fiber of the first table.
    Search { explored: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityVerdict {
    pub status: ConnectivityStatus,
    pub evidence: ConnectivityEvidence,
}

/// Precomputed minimal primes and radicality for repeated connectivity
/// queries on one configuration.
#[derive(Debug, Clone)]
pub struct ConnectivityOracle {
    config: Configuration,
    primes: Vec<PrimeComponent>,
    radical: RadicalStatus,
}

impl ConnectivityOracle {
    pub fn new(config: &Configuration) -> Result<Self> {
        Self::with_cap(config, DEFAULT_ADMISSIBLE_CAP)
    }

    pub fn with_cap(config: &Configuration, admissible_cap: usize) -> Result<Self> {
        let primes = minimal_primes(config, admissible_cap)?;
        let radical = radical_verdict(config)?.status;
        Ok(ConnectivityOracle {
            config: config.clone(),
            primes,
            radical,
        })
    }

    pub fn primes(&self) -> &[PrimeComponent] {
        &self.primes
    }

    pub fn radical_status(&self) -> RadicalStatus {
        self.radical
    }

    /// Decides whether `t2` is reachable from `t`. With `fallback` set, an
    /// undecided criterion is resolved by a fiber search bounded by that cap.
    pub fn decide(
        &self,
        t: &Table,
        t2: &Table,
        fallback: Option<usize>,
    ) -> Result<ConnectivityVerdict> {
        t.check_support(&self.config)?;
        t2.check_support(&self.config)?;
        for p in &self.primes {
            if !pair_in_component(t, t2, p)? {
                return Ok(ConnectivityVerdict {
                    status: ConnectivityStatus::Disconnected,
                    evidence: ConnectivityEvidence::FailingComponent(p.w().clone()),
                });
            }
        }
        if self.radical == RadicalStatus::Radical {
            return Ok(ConnectivityVerdict {
                status: ConnectivityStatus::Connected,
                evidence: ConnectivityEvidence::CriterionRadical,
            });
        }
        match fallback {
            None => Ok(ConnectivityVerdict {
                status: ConnectivityStatus::Unknown,
                evidence: ConnectivityEvidence::RadicalityUnconfirmed(self.radical),
            }),
            Some(cap) => {
                let fiber = bfs_fiber(&self.config, t, cap)?;
                Ok(ConnectivityVerdict {
                    status: if fiber.contains(t2) {
                        ConnectivityStatus::Connected
                    } else {
                        ConnectivityStatus::Disconnected
                    },
                    evidence: ConnectivityEvidence::Search {
                        explored: fiber.len(),
                    },
                })
            }
        }
    }
}

/// One-shot connectivity decision with default caps.
pub fn connected(
    t: &Table,
    t2: &Table,
    config: &Configuration,
    oracle_fallback: bool,
) -> Result<ConnectivityVerdict> {
    ConnectivityOracle::new(config)?.decide(t, t2, oracle_fallback.then_some(DEFAULT_NODE_CAP))
}

/// Random walk with ChaCha8 seeded from `seed`: each step picks a box and a
/// sign uniformly and applies the move unless it would go negative.
pub fn random_walk(config: &Configuration, t: &Table, steps: u64, seed: u64) -> Result<Table> {
    t.check_support(config)?;
    let moves = all_moves(config);
    let mut cur = t.clone();
    if moves.is_empty() {
        return Ok(cur);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..steps {
        let mv = moves[rng.gen_range(0..moves.len())];
        if let Some(next) = mv.apply(&cur) {
            cur = next;
        }
    }
    Ok(cur)
}
