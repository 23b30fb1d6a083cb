//! Path and cycle shapes of connected configurations.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{connected_components, Cell, Configuration, UnitMinor};
use crate::error::{Error, Result};

/// Geometric kind of a connected configuration.
///
/// `MonotoneNE` paths run up-and-right (rows decrease while columns increase
/// along the ordering), `MonotoneSE` paths run down-and-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PathKind {
    LinePath,
    MonotoneNE,
    MonotoneSE,
    NonMonotonePath,
    Cycle,
    Other,
}

impl PathKind {
    pub fn is_monotone(&self) -> bool {
        matches!(
            self,
            PathKind::LinePath | PathKind::MonotoneNE | PathKind::MonotoneSE
        )
    }

    pub fn is_path(&self) -> bool {
        self.is_monotone() || *self == PathKind::NonMonotonePath
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathShape {
    pub kind: PathKind,
    /// Canonical ordering: the valid path ordering with the smaller first
    /// anchor, or the cycle walked from its smallest anchor. Empty for `Other`.
    pub ordering: Vec<UnitMinor>,
    /// Every valid path ordering (one or two).
    pub orderings: Vec<Vec<UnitMinor>>,
    /// For monotone paths: the end-point pair computed from each ordering in
    /// `orderings`, by the corner rule driven by the column direction.
    pub endpoints: Vec<(Cell, Cell)>,
}

fn is_valid_path(order: &[UnitMinor]) -> bool {
    for i in 1..order.len() {
        let cur = &order[i];
        let prev = &order[i - 1];
        if !prev.shares_edge(cur) {
            return false;
        }
        let link: BTreeSet<Cell> = prev
            .vertices()
            .into_iter()
            .filter(|v| cur.has_vertex(*v))
            .collect();
        for earlier in &order[..i - 1] {
            if earlier
                .vertices()
                .iter()
                .any(|v| cur.has_vertex(*v) && !link.contains(v))
            {
                return false;
            }
        }
    }
    true
}

fn walk_chain(config: &Configuration, start: UnitMinor) -> Vec<UnitMinor> {
    let mut order = vec![start];
    let mut visited: BTreeSet<UnitMinor> = [start].into_iter().collect();
    loop {
        let cur = *order.last().unwrap();
        let next = config
            .edge_neighbors(&cur)
            .into_iter()
            .find(|n| !visited.contains(n));
        match next {
            Some(n) => {
                visited.insert(n);
                order.push(n);
            }
            None => break,
        }
    }
    order
}

/// All valid path orderings of a connected configuration, sorted.
///
/// Empty when the configuration is not a path (branching, cycles, or chains
/// that touch themselves at a corner).
pub fn path_orderings(config: &Configuration) -> Vec<Vec<UnitMinor>> {
    if config.is_empty() {
        return Vec::new();
    }
    if config.len() == 1 {
        return vec![config.iter().copied().collect()];
    }
    let degrees: Vec<(UnitMinor, usize)> = config
        .iter()
        .map(|m| (*m, config.edge_neighbors(m).len()))
        .collect();
    if degrees.iter().any(|&(_, d)| d > 2) {
        return Vec::new();
    }
    let mut out: Vec<Vec<UnitMinor>> = degrees
        .iter()
        .filter(|&&(_, d)| d <= 1)
        .map(|&(m, _)| walk_chain(config, m))
        .filter(|order| order.len() == config.len() && is_valid_path(order))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn monotone(seq: &[u32]) -> bool {
    seq.windows(2).all(|w| w[0] <= w[1]) || seq.windows(2).all(|w| w[0] >= w[1])
}

fn endpoint_pair(order: &[UnitMinor]) -> (Cell, Cell) {
    let first = order[0].anchor;
    let last = order[order.len() - 1].anchor;
    if last.col >= first.col {
        (
            first,
            Cell {
                row: last.row + 1,
                col: last.col + 1,
            },
        )
    } else {
        (
            Cell {
                row: first.row,
                col: first.col + 1,
            },
            Cell {
                row: last.row + 1,
                col: last.col,
            },
        )
    }
}

fn path_kind(order: &[UnitMinor]) -> PathKind {
    let rows: Vec<u32> = order.iter().map(|m| m.anchor.row).collect();
    let cols: Vec<u32> = order.iter().map(|m| m.anchor.col).collect();
    if rows.iter().all(|&r| r == rows[0]) || cols.iter().all(|&c| c == cols[0]) {
        return PathKind::LinePath;
    }
    if !(monotone(&rows) && monotone(&cols)) {
        return PathKind::NonMonotonePath;
    }
    let rows_up = rows.first() > rows.last();
    let cols_up = cols.first() < cols.last();
    if rows_up == cols_up {
        PathKind::MonotoneNE
    } else {
        PathKind::MonotoneSE
    }
}

fn cycle_walk(config: &Configuration) -> Vec<UnitMinor> {
    let start = *config.iter().next().unwrap();
    let mut order = vec![start];
    let mut visited: BTreeSet<UnitMinor> = [start].into_iter().collect();
    let mut cur = start;
    loop {
        let mut nbrs = config.edge_neighbors(&cur);
        nbrs.sort();
        match nbrs.into_iter().find(|n| !visited.contains(n)) {
            Some(n) => {
                visited.insert(n);
                order.push(n);
                cur = n;
            }
            None => break,
        }
    }
    order
}

/// Classifies a connected configuration as a (monotone) path, a cycle or
/// something else.
pub fn classify_shape(config: &Configuration) -> Result<PathShape> {
    if connected_components(config).len() != 1 {
        return Err(Error::NotConnected);
    }
    let all_degree_two = config.iter().all(|m| config.edge_neighbors(m).len() == 2);
    if config.len() >= 3 && all_degree_two {
        return Ok(PathShape {
            kind: PathKind::Cycle,
            ordering: cycle_walk(config),
            orderings: Vec::new(),
            endpoints: Vec::new(),
        });
    }
    let orderings = path_orderings(config);
    let Some(canonical) = orderings.first().cloned() else {
        return Ok(PathShape {
            kind: PathKind::Other,
            ordering: Vec::new(),
            orderings,
            endpoints: Vec::new(),
        });
    };
    let kind = path_kind(&canonical);
    let endpoints = if kind.is_monotone() {
        orderings.iter().map(|o| endpoint_pair(o)).collect()
    } else {
        Vec::new()
    };
    Ok(PathShape {
        kind,
        ordering: canonical,
        orderings,
        endpoints,
    })
}
