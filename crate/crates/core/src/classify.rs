//! Primality, quadratic Gröbner bases and radicality of I(C).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::motif::{transform_pattern, PIN};
use crate::grid::{
    classify_shape, component_graph, connected_components, is_chessboard, is_special, Cell,
    ComponentGraph, Configuration, PathKind, Symmetry, UnitMinor,
};
use crate::groebner::{
    configuration_basis, configuration_generators, marked_order, BinomialElement, Monomial,
    VariableRanking, DEFAULT_DEGREE_CAP,
};

/// Default cap on the number of components with a free mark choice.
pub const DEFAULT_COMPONENT_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MarkChoice {
    Diagonal,
    AntiDiagonal,
}

impl MarkChoice {
    pub fn cells(self, m: &UnitMinor) -> [Cell; 2] {
        match self {
            MarkChoice::Diagonal => m.diagonal(),
            MarkChoice::AntiDiagonal => m.anti_diagonal(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            MarkChoice::Diagonal => MarkChoice::AntiDiagonal,
            MarkChoice::AntiDiagonal => MarkChoice::Diagonal,
        }
    }
}

/// A choice of marked monomial for each minor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Marking {
    choices: BTreeMap<UnitMinor, MarkChoice>,
}

impl Marking {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn uniform(config: &Configuration, choice: MarkChoice) -> Self {
        Marking {
            choices: config.iter().map(|m| (*m, choice)).collect(),
        }
    }

    pub fn set(&mut self, m: UnitMinor, choice: MarkChoice) {
        self.choices.insert(m, choice);
    }

    pub fn get(&self, m: &UnitMinor) -> Option<MarkChoice> {
        self.choices.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UnitMinor, &MarkChoice)> + '_ {
        self.choices.iter()
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// The marked monomial of `m` and the other monomial of its binomial.
    pub fn mark_and_other(&self, m: &UnitMinor) -> Option<(Monomial, Monomial)> {
        let choice = self.get(m)?;
        Some((
            Monomial::from_cells(choice.cells(m)),
            Monomial::from_cells(choice.flip().cells(m)),
        ))
    }

    /// No variable occurs in two marks.
    pub fn marks_pairwise_coprime(&self) -> bool {
        let mut used = BTreeSet::new();
        self.choices
            .iter()
            .all(|(m, c)| c.cells(m).iter().all(|v| used.insert(*v)))
    }
}

/// A marking with pairwise coprime marks together with a ranking that makes
/// every mark initial; `verified` is set once the generators were confirmed
/// to be a reduced Gröbner basis under that ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCertificate {
    pub marking: Marking,
    pub ranking: VariableRanking,
    pub verified: bool,
}

/// Why a configuration is or is not prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimalityEvidence {
    /// Two minors sharing an edge: the configuration is not a chessboard.
    SharedEdge(UnitMinor, UnitMinor),
    /// Four components forming a 4-cycle in the component graph.
    FourCycle([Configuration; 4]),
    /// Chessboard whose component graph has no 4-cycle.
    ChessboardWithout4Cycle { components: usize, links: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalityReport {
    pub prime: bool,
    pub evidence: PrimalityEvidence,
}

pub fn is_prime(config: &Configuration) -> bool {
    primality(config).prime
}

pub fn primality(config: &Configuration) -> PrimalityReport {
    if !is_chessboard(config) {
        let (m, n) = config
            .iter()
            .find_map(|m| config.edge_neighbors(m).first().map(|n| (*m, *n)))
            .expect("non-chessboard has an edge-sharing pair");
        return PrimalityReport {
            prime: false,
            evidence: PrimalityEvidence::SharedEdge(m.min(n), m.max(n)),
        };
    }
    let graph: ComponentGraph = component_graph(config);
    match graph.four_cycle() {
        Some(idx) => PrimalityReport {
            prime: false,
            evidence: PrimalityEvidence::FourCycle(idx.map(|i| graph.nodes[i].clone())),
        },
        None => PrimalityReport {
            prime: true,
            evidence: PrimalityEvidence::ChessboardWithout4Cycle {
                components: graph.node_count(),
                links: graph.link_count(),
            },
        },
    }
}

fn internally_coprime(comp: &Configuration, choice: MarkChoice) -> bool {
    Marking::uniform(comp, choice).marks_pairwise_coprime()
}

/// Decides whether I(C) has a quadratic Gröbner basis for some lex order,
/// using the default component cap.
pub fn has_quadratic_gb(config: &Configuration) -> Result<Option<QuadraticCertificate>> {
    has_quadratic_gb_with_cap(config, DEFAULT_COMPONENT_CAP)
}

pub fn has_quadratic_gb_with_cap(
    config: &Configuration,
    component_cap: usize,
) -> Result<Option<QuadraticCertificate>> {
    let components = connected_components(config);
    let mut options: Vec<Vec<MarkChoice>> = Vec::with_capacity(components.len());
    for comp in &components {
        let shape = classify_shape(comp)?;
        if !shape.kind.is_monotone() {
            return Ok(None);
        }
        let allowed: Vec<MarkChoice> = [MarkChoice::Diagonal, MarkChoice::AntiDiagonal]
            .into_iter()
            .filter(|c| internally_coprime(comp, *c))
            .collect();
        if allowed.is_empty() {
            return Ok(None);
        }
        options.push(allowed);
    }
    let free = options.iter().filter(|o| o.len() > 1).count();
    if free > component_cap {
        return Err(Error::CapExceeded {
            what: "components",
            cap: component_cap,
        });
    }

    let mut chosen: Vec<MarkChoice> = Vec::with_capacity(components.len());
    let mut used: BTreeSet<Cell> = BTreeSet::new();
    if !assign(&components, &options, &mut chosen, &mut used) {
        return Ok(None);
    }

    let mut marking = Marking::new();
    for (comp, choice) in components.iter().zip(&chosen) {
        for m in comp.iter() {
            marking.set(*m, *choice);
        }
    }
    let ranking = marked_order(config, &marking)?;
    verify_quadratic(config, &ranking)?;
    Ok(Some(QuadraticCertificate {
        marking,
        ranking,
        verified: true,
    }))
}

fn assign(
    components: &[Configuration],
    options: &[Vec<MarkChoice>],
    chosen: &mut Vec<MarkChoice>,
    used: &mut BTreeSet<Cell>,
) -> bool {
    let k = chosen.len();
    if k == components.len() {
        return true;
    }
    for &choice in &options[k] {
        let cells: Vec<Cell> = components[k].iter().flat_map(|m| choice.cells(m)).collect();
        if cells.iter().any(|c| used.contains(c)) {
            continue;
        }
        used.extend(cells.iter().copied());
        chosen.push(choice);
        if assign(components, options, chosen, used) {
            return true;
        }
        chosen.pop();
        for c in &cells {
            used.remove(c);
        }
    }
    false
}

fn verify_quadratic(config: &Configuration, ranking: &VariableRanking) -> Result<()> {
    let gb = configuration_basis(config, ranking, DEFAULT_DEGREE_CAP)
        .map_err(|e| Error::CertificateVerificationFailed(e.to_string()))?;
    let mut gens: Vec<BinomialElement> = configuration_generators(config)
        .iter()
        .filter_map(|g| ranking.orient(g))
        .collect();
    gens.sort_by(|a, b| ranking.compare(&a.lead, &b.lead));
    let mut elems = gb.elements().to_vec();
    elems.sort_by(|a, b| ranking.compare(&a.lead, &b.lead));
    if gens != elems {
        return Err(Error::CertificateVerificationFailed(format!(
            "reduced basis has {} elements of degree up to {}, expected the {} generators",
            elems.len(),
            gb.max_degree(),
            gens.len()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RadicalStatus {
    Radical,
    NotRadical,
    ConditionallyRadical,
    Unknown,
}

impl fmt::Display for RadicalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RadicalStatus::Radical => "Radical",
            RadicalStatus::NotRadical => "NotRadical",
            RadicalStatus::ConditionallyRadical => "ConditionallyRadical",
            RadicalStatus::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalVerdict {
    pub status: RadicalStatus,
    pub reason: String,
    /// For `NotRadical`: a binomial `f` with `f` outside I(C) and `f^2` inside.
    pub witness: Option<BinomialElement>,
    /// Per-component verdicts when the configuration was split.
    pub components: Vec<RadicalVerdict>,
}

impl RadicalVerdict {
    fn leaf(status: RadicalStatus, reason: impl Into<String>) -> Self {
        RadicalVerdict {
            status,
            reason: reason.into(),
            witness: None,
            components: Vec::new(),
        }
    }
}

// Local vertex offsets around the canonical pin (stub on top of the middle
// box of a row of three):
//
//   k a b l
//   c d e f
//   g h i j
const PIN_A: (i64, i64) = (0, 1);
const PIN_B: (i64, i64) = (0, 2);
const PIN_C: (i64, i64) = (1, 0);
const PIN_D: (i64, i64) = (1, 1);
const PIN_E: (i64, i64) = (1, 2);
const PIN_F: (i64, i64) = (1, 3);
const PIN_G: (i64, i64) = (2, 0);
const PIN_H: (i64, i64) = (2, 1);
const PIN_I: (i64, i64) = (2, 2);
const PIN_J: (i64, i64) = (2, 3);
const PIN_K: (i64, i64) = (0, 0);
const PIN_SIDE_LEFT: (i64, i64) = (0, 0);
const PIN_SIDE_RIGHT: (i64, i64) = (0, 2);

/// A binomial certifying non-radicality for a configuration containing a
/// pin: `acej - bcfh` when neither box flanking the stub is present, and
/// `kdi - aeg` (from the square formed with a flanking box) otherwise.
pub fn pin_witness(config: &Configuration) -> Option<BinomialElement> {
    let mut fallback = None;
    for sym in Symmetry::all() {
        let (norm, offset) = transform_pattern(&PIN, sym);
        for m in config.iter() {
            let shift = (
                m.anchor.row as i64 - norm[0].0,
                m.anchor.col as i64 - norm[0].1,
            );
            if !norm
                .iter()
                .all(|&(r, c)| config.contains_signed(r + shift.0, c + shift.1))
            {
                continue;
            }
            let vertex = |p: (i64, i64)| {
                let (r, c) = sym.apply_vertex(p);
                Cell {
                    row: (r - offset.0 + shift.0) as u32,
                    col: (c - offset.1 + shift.1) as u32,
                }
            };
            let has_box = |p: (i64, i64)| {
                let (r, c) = sym.apply_box(p);
                config.contains_signed(r - offset.0 + shift.0, c - offset.1 + shift.1)
            };
            let mono = |ps: &[(i64, i64)]| Monomial::from_cells(ps.iter().map(|&p| vertex(p)));
            if has_box(PIN_SIDE_LEFT) {
                return Some(BinomialElement::binomial(
                    mono(&[PIN_K, PIN_D, PIN_I]),
                    mono(&[PIN_A, PIN_E, PIN_G]),
                ));
            }
            if fallback.is_none() && !has_box(PIN_SIDE_RIGHT) {
                fallback = Some(BinomialElement::binomial(
                    mono(&[PIN_A, PIN_C, PIN_E, PIN_J]),
                    mono(&[PIN_B, PIN_C, PIN_F, PIN_H]),
                ));
            }
        }
    }
    fallback
}

fn component_verdict(comp: &Configuration) -> Result<RadicalVerdict> {
    if has_quadratic_gb(comp)?.is_some() {
        return Ok(RadicalVerdict::leaf(
            RadicalStatus::Radical,
            "monotone path: quadratic Gröbner basis, generated by a regular sequence",
        ));
    }
    let shape = classify_shape(comp)?;
    Ok(match shape.kind {
        PathKind::Other => match pin_witness(comp) {
            Some(w) => RadicalVerdict {
                status: RadicalStatus::NotRadical,
                reason: "connected special component containing a pin".into(),
                witness: Some(w),
                components: Vec::new(),
            },
            None => RadicalVerdict::leaf(RadicalStatus::Unknown, "no pin placement found"),
        },
        PathKind::NonMonotonePath => RadicalVerdict::leaf(
            RadicalStatus::ConditionallyRadical,
            "non-monotone path: radical provided I(C) has no embedded prime ideals",
        ),
        PathKind::Cycle => RadicalVerdict::leaf(
            RadicalStatus::Unknown,
            format!(
                "cycle of length {}: radical expected only for length >= 12 (unproven)",
                comp.len()
            ),
        ),
        _ => RadicalVerdict::leaf(RadicalStatus::Unknown, "no applicable criterion"),
    })
}

fn combine(verdicts: &[RadicalVerdict]) -> RadicalStatus {
    let has = |s| verdicts.iter().any(|v| v.status == s);
    if has(RadicalStatus::NotRadical) {
        RadicalStatus::NotRadical
    } else if has(RadicalStatus::Unknown) {
        RadicalStatus::Unknown
    } else if has(RadicalStatus::ConditionallyRadical) {
        RadicalStatus::ConditionallyRadical
    } else {
        RadicalStatus::Radical
    }
}

/// Radicality verdict for I(C).
///
/// Prime ideals and ideals with a quadratic Gröbner basis are radical. For
/// special configurations the components are vertex-disjoint, so the verdict
/// is computed per component and combined; other configurations get
/// `Unknown`.
pub fn radical_verdict(config: &Configuration) -> Result<RadicalVerdict> {
    if config.is_empty() {
        return Ok(RadicalVerdict::leaf(RadicalStatus::Radical, "zero ideal"));
    }
    if has_quadratic_gb(config)?.is_some() {
        return Ok(RadicalVerdict::leaf(
            RadicalStatus::Radical,
            "quadratic Gröbner basis with squarefree initial ideal",
        ));
    }
    if is_prime(config) {
        return Ok(RadicalVerdict::leaf(RadicalStatus::Radical, "prime ideal"));
    }
    if !is_special(config) {
        return Ok(RadicalVerdict::leaf(
            RadicalStatus::Unknown,
            "configuration is not special; no criterion applies",
        ));
    }
    let parts = connected_components(config)
        .iter()
        .map(component_verdict)
        .collect::<Result<Vec<_>>>()?;
    let status = combine(&parts);
    let witness = parts
        .iter()
        .find(|v| v.status == RadicalStatus::NotRadical)
        .and_then(|v| v.witness.clone());
    let reason = match parts.iter().find(|v| v.status == status) {
        Some(v) if parts.len() == 1 => v.reason.clone(),
        Some(v) => format!("combined over {} components: {}", parts.len(), v.reason),
        None => "combined over components".into(),
    };
    Ok(RadicalVerdict {
        status,
        reason,
        witness,
        components: parts,
    })
}
