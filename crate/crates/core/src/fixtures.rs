//! Named configurations bundled with the crate.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::format::Labels;
use crate::grid::{Cell, Configuration};

const FIXTURES: &str = include_str!("../fixtures/fixtures.json");

#[derive(Deserialize)]
struct RawFixture {
    name: String,
    boxes: Vec<(u32, u32)>,
    #[serde(default)]
    labels: BTreeMap<String, (u32, u32)>,
}

#[derive(Deserialize)]
struct RawFile {
    fixtures: Vec<RawFixture>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub config: Configuration,
    pub labels: Option<Labels>,
}

impl Fixture {
    /// Cell carrying `label`; panics on unknown labels, which is a fixture bug.
    pub fn cell(&self, label: &str) -> Cell {
        self.labels
            .as_ref()
            .and_then(|l| l.cell(label))
            .unwrap_or_else(|| panic!("fixture {} has no vertex {label}", self.name))
    }
}

fn raw() -> Vec<RawFixture> {
    serde_json::from_str::<RawFile>(FIXTURES)
        .expect("bundled fixtures parse")
        .fixtures
}

pub fn fixture_names() -> Vec<String> {
    raw().into_iter().map(|f| f.name).collect()
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let f = raw()
        .into_iter()
        .find(|f| f.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let labels = (!f.labels.is_empty()).then(|| {
        Labels::new(
            f.labels
                .into_iter()
                .map(|(k, (row, col))| (k, Cell { row, col })),
        )
    });
    Ok(Fixture {
        name: f.name,
        config: Configuration::from_anchors(&f.boxes)?,
        labels,
    })
}
