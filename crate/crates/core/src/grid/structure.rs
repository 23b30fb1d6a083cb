use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Cell, Configuration, UnitMinor};

/// Splits `config` into its edge-connected components.
///
/// Components are returned in order of their smallest anchor.
pub fn connected_components(config: &Configuration) -> Vec<Configuration> {
    let mut seen: BTreeSet<UnitMinor> = BTreeSet::new();
    let mut out = Vec::new();
    // BTreeSet iteration visits the smallest unvisited anchor first, so the
    // output order is already canonical.
    for start in config.iter() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![*start];
        seen.insert(*start);
        while let Some(m) = stack.pop() {
            comp.insert(m);
            for n in config.edge_neighbors(&m) {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        out.push(Configuration::from_set(comp));
    }
    out
}

/// The graph whose nodes are the connected components and whose links record
/// single-vertex meetings between minors of distinct components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentGraph {
    pub nodes: Vec<Configuration>,
    /// `(i, j, vertex)` with `i < j`; one entry per shared vertex.
    pub links: Vec<(usize, usize, Cell)>,
}

impl ComponentGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    /// No two links join the same pair of nodes.
    pub fn is_simple(&self) -> bool {
        let pairs: BTreeSet<(usize, usize)> = self.links.iter().map(|&(i, j, _)| (i, j)).collect();
        pairs.len() == self.links.len()
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.nodes.len()];
        for &(i, j, _) in &self.links {
            adj[i].insert(j);
            adj[j].insert(i);
        }
        adj
    }

    /// A cycle of length four on distinct nodes, if any, as `[p, q, r, s]`
    /// with links p-q, q-r, r-s, s-p.
    pub fn four_cycle(&self) -> Option<[usize; 4]> {
        let adj = self.adjacency();
        let n = self.nodes.len();
        for p in 0..n {
            for r in (p + 1)..n {
                let common: Vec<usize> = adj[p].intersection(&adj[r]).copied().collect();
                if common.len() >= 2 {
                    return Some([p, common[0], r, common[1]]);
                }
            }
        }
        None
    }
}

pub fn component_graph(config: &Configuration) -> ComponentGraph {
    let nodes = connected_components(config);
    let mut owner: BTreeMap<UnitMinor, usize> = BTreeMap::new();
    for (idx, comp) in nodes.iter().enumerate() {
        for m in comp.iter() {
            owner.insert(*m, idx);
        }
    }
    let mut links = BTreeSet::new();
    let minors: Vec<UnitMinor> = config.iter().copied().collect();
    for (x, m) in minors.iter().enumerate() {
        for n in &minors[x + 1..] {
            if m.shared_vertices(n) != 1 {
                continue;
            }
            let (i, j) = (owner[m], owner[n]);
            if i == j {
                continue;
            }
            let vertex = m
                .vertices()
                .into_iter()
                .find(|v| n.has_vertex(*v))
                .expect("minors share one vertex");
            links.insert((i.min(j), i.max(j), vertex));
        }
    }
    ComponentGraph {
        nodes,
        links: links.into_iter().collect(),
    }
}

/// Any two distinct minors meet in at most one vertex.
pub fn is_chessboard(config: &Configuration) -> bool {
    config.iter().all(|m| config.edge_neighbors(m).is_empty())
}

/// Every pair of minors meeting in exactly one vertex has a third minor
/// sharing an edge with both.
pub fn is_special(config: &Configuration) -> bool {
    let minors: Vec<UnitMinor> = config.iter().copied().collect();
    for (x, m) in minors.iter().enumerate() {
        for n in &minors[x + 1..] {
            if m.shared_vertices(n) != 1 {
                continue;
            }
            let mediated = minors.iter().any(|d| d.shares_edge(m) && d.shares_edge(n));
            if !mediated {
                return false;
            }
        }
    }
    true
}

/// Minors `ad - bc` whose diagonal pair or anti-diagonal pair consists of
/// vertices that belong to no other minor.
pub fn free_minors(config: &Configuration) -> BTreeSet<UnitMinor> {
    let mut count: BTreeMap<Cell, usize> = BTreeMap::new();
    for m in config.iter() {
        for v in m.vertices() {
            *count.entry(v).or_default() += 1;
        }
    }
    let is_free = |v: &Cell| count.get(v) == Some(&1);
    config
        .iter()
        .filter(|m| m.diagonal().iter().all(is_free) || m.anti_diagonal().iter().all(is_free))
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(anchors: &[(u32, u32)]) -> Configuration {
        Configuration::from_anchors(anchors).unwrap()
    }

    const RING4: &[(u32, u32)] = &[(1, 2), (2, 1), (2, 3), (3, 2)];
    const L: &[(u32, u32)] = &[(2, 1), (2, 2), (1, 2), (1, 3)];

    #[test]
    fn components() {
        assert_eq!(connected_components(&cfg(L)).len(), 1);
        assert_eq!(connected_components(&cfg(RING4)).len(), 4);
        let two = connected_components(&cfg(&[(1, 3), (1, 1)]));
        assert_eq!(two.len(), 2);
        assert!(two[0].contains_anchor(1, 1));
    }

    #[test]
    fn ring_graph_is_four_cycle() {
        let g = component_graph(&cfg(RING4));
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.link_count(), 4);
        assert!(g.is_simple());
        assert!(g.four_cycle().is_some());
        // the shared vertices are d, e, h, i
        let shared: BTreeSet<Cell> = g.links.iter().map(|l| l.2).collect();
        let expected: BTreeSet<Cell> = [(2, 2), (2, 3), (3, 2), (3, 3)]
            .into_iter()
            .map(|(row, col)| Cell { row, col })
            .collect();
        assert_eq!(shared, expected);
    }

    #[test]
    fn small_graphs() {
        let g = component_graph(&cfg(L));
        assert_eq!((g.node_count(), g.link_count()), (1, 0));
        let g = component_graph(&cfg(&[(1, 1), (2, 2)]));
        assert_eq!((g.node_count(), g.link_count()), (2, 1));
        assert!(g.four_cycle().is_none());
    }

    #[test]
    fn chessboard_and_special() {
        assert!(is_chessboard(&cfg(RING4)));
        assert!(!is_chessboard(&cfg(L)));
        assert!(is_chessboard(&cfg(&[(1, 1)])));

        let mut plus = RING4.to_vec();
        plus.push((2, 2));
        assert!(is_special(&cfg(&plus)));
        assert!(!is_special(&cfg(RING4)));
        assert!(is_special(&cfg(L)));
    }

    #[test]
    fn free_minor_examples() {
        assert_eq!(free_minors(&cfg(&[(1, 1)])).len(), 1);
        // every ring minor meets two others, one on each of its diagonals
        assert!(free_minors(&cfg(RING4)).is_empty());
        assert_eq!(free_minors(&cfg(&[(1, 1), (2, 2), (3, 3)])).len(), 3);
        assert!(free_minors(&cfg(&[(1, 1), (1, 2), (2, 1), (2, 2)])).is_empty());
    }
}
