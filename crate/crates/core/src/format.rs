//! Text formats for configurations, tables, components and binomials.
//!
//! Configurations are read either as an ASCII grid (one line per anchor row,
//! `#` for a box and `.` for no box) or as a JSON document
//! `{"boxes": [[row, col], ...]}`. Tables use `{"entries": [[row, col, value], ...]}`
//! or, when vertex labels are available, the short form `a=1,j=2`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fiber::Table;
use crate::grid::{Cell, Configuration, GeneralMinor, UnitMinor};
use crate::groebner::{BinomialElement, Monomial};
use crate::primes::PrimeComponent;

#[derive(Serialize, Deserialize)]
struct BoxesDoc {
    boxes: Vec<(i64, i64)>,
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoxesDoc {
            boxes: self
                .iter()
                .map(|m| (m.anchor.row as i64, m.anchor.col as i64))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = BoxesDoc::deserialize(d)?;
        configuration_from_pairs(&doc.boxes).map_err(D::Error::custom)
    }
}

fn configuration_from_pairs(pairs: &[(i64, i64)]) -> Result<Configuration> {
    let minors = pairs
        .iter()
        .map(|&(r, c)| Cell::from_signed(r, c).map(|anchor| UnitMinor { anchor }))
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(minors)
}

/// Parses an ASCII grid or a structured document.
pub fn parse_configuration(text: &str) -> Result<Configuration> {
    if text.trim_start().starts_with('{') {
        let doc: BoxesDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        return configuration_from_pairs(&doc.boxes);
    }
    let mut minors = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for (j, ch) in line.trim_end_matches('\r').chars().enumerate() {
            match ch {
                '#' => minors.push(UnitMinor {
                    anchor: Cell {
                        row: i as u32 + 1,
                        col: j as u32 + 1,
                    },
                }),
                '.' => {}
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character {other:?} at line {}, column {}",
                        i + 1,
                        j + 1
                    )))
                }
            }
        }
    }
    Configuration::new(minors)
}

/// ASCII grid with every row padded to the widest column.
pub fn configuration_to_ascii(config: &Configuration) -> String {
    let rows = config.iter().map(|m| m.anchor.row).max().unwrap_or(0);
    let cols = config.iter().map(|m| m.anchor.col).max().unwrap_or(0);
    let mut out = String::new();
    for r in 1..=rows {
        for c in 1..=cols {
            out.push(if config.contains_anchor(r, c) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

pub fn configuration_to_json(config: &Configuration) -> String {
    serde_json::to_string(config).expect("boxes serialize")
}

/// Vertex names such as `a`, `b`, ... attached to a fixture.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Labels {
    by_cell: BTreeMap<Cell, String>,
    by_name: BTreeMap<String, Cell>,
}

impl Labels {
    pub fn new<I: IntoIterator<Item = (String, Cell)>>(pairs: I) -> Self {
        let mut labels = Labels::default();
        for (name, cell) in pairs {
            labels.by_cell.insert(cell, name.clone());
            labels.by_name.insert(name, cell);
        }
        labels
    }

    pub fn cell(&self, name: &str) -> Option<Cell> {
        self.by_name.get(name).copied()
    }

    pub fn label(&self, cell: Cell) -> Option<&str> {
        self.by_cell.get(&cell).map(String::as_str)
    }

    fn name_or_coords(&self, cell: Cell) -> String {
        match self.label(cell) {
            Some(l) => l.to_string(),
            None => format!("x[{},{}]", cell.row, cell.col),
        }
    }

    /// A monomial as a word in the labels, letters sorted (`b^2 h` prints as `bbh`).
    pub fn monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut names: Vec<String> = m
            .exponents()
            .iter()
            .flat_map(|(c, k)| std::iter::repeat_n(self.name_or_coords(*c), *k as usize))
            .collect();
        names.sort();
        names.concat()
    }

    pub fn binomial(&self, b: &BinomialElement) -> String {
        match &b.tail {
            Some(t) => format!("{}-{}", self.monomial(&b.lead), self.monomial(t)),
            None => self.monomial(&b.lead),
        }
    }

    pub fn minor(&self, g: &GeneralMinor) -> String {
        self.binomial(&BinomialElement::from_minor(g))
    }
}

/// Structured form of a prime component.
pub fn component_to_json(p: &PrimeComponent) -> Value {
    json!({
        "w": p.w().iter().map(|c| [c.row, c.col]).collect::<Vec<_>>(),
        "inner": p
            .inner()
            .iter()
            .map(|g| [g.row_lo, g.row_hi, g.col_lo, g.col_hi])
            .collect::<Vec<_>>(),
    })
}

/// `(d,e,h,i)` or `(a,d,h,k,ej-fi)`: W's labels sorted, then the inner minors.
pub fn component_pretty(p: &PrimeComponent, labels: &Labels) -> String {
    let mut vars: Vec<String> = p.w().iter().map(|c| labels.name_or_coords(*c)).collect();
    vars.sort();
    let mut minors: Vec<String> = p.inner().iter().map(|g| labels.minor(g)).collect();
    minors.sort();
    vars.extend(minors);
    format!("({})", vars.join(","))
}

#[derive(Deserialize)]
struct EntriesDoc {
    entries: Vec<(i64, i64, i64)>,
}

/// Parses `{"entries": [[row, col, value], ...]}` or, with labels, `a=1,j=2`.
pub fn parse_table(text: &str, labels: Option<&Labels>) -> Result<Table> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let doc: EntriesDoc =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        let mut entries = Vec::with_capacity(doc.entries.len());
        for (r, c, v) in doc.entries {
            if v < 0 {
                return Err(Error::Parse(format!("negative entry {v} at ({r},{c})")));
            }
            entries.push((Cell::from_signed(r, c)?, v as u64));
        }
        return Ok(Table::new(entries));
    }
    let labels = labels.ok_or_else(|| {
        Error::Parse("label form needs a labelled configuration; use the entries document".into())
    })?;
    let mut entries = Vec::new();
    for part in trimmed.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected label=value, got {part:?}")))?;
        let cell = labels
            .cell(name.trim())
            .ok_or_else(|| Error::Parse(format!("unknown label {:?}", name.trim())))?;
        let v: u64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad value in {part:?}")))?;
        entries.push((cell, v));
    }
    Ok(Table::new(entries))
}

pub fn table_to_json(t: &Table) -> Value {
    json!({
        "entries": t
            .entries()
            .iter()
            .map(|(c, v)| json!([c.row, c.col, v]))
            .collect::<Vec<_>>(),
    })
}

/// Values aligned on the bounding box of V(C); `·` marks cells outside V(C).
pub fn table_pretty(t: &Table, config: &Configuration) -> String {
    let vertices = config.vertex_set();
    let (Some(r0), Some(r1)) = (
        vertices.iter().map(|c| c.row).min(),
        vertices.iter().map(|c| c.row).max(),
    ) else {
        return String::new();
    };
    let c0 = vertices.iter().map(|c| c.col).min().unwrap_or(1);
    let c1 = vertices.iter().map(|c| c.col).max().unwrap_or(1);
    let width = t
        .entries()
        .values()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for r in r0..=r1 {
        let cells: Vec<String> = (c0..=c1)
            .map(|c| {
                let cell = Cell { row: r, col: c };
                if vertices.contains(&cell) {
                    format!("{:>width$}", t.get(cell))
                } else {
                    format!("{:>width$}", "·")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}
