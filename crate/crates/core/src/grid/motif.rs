//! Square, pin and saddle detection.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Cell, Configuration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MotifKind {
    /// 2x2 block of boxes.
    Square,
    /// Three collinear boxes with a fourth attached to the middle one.
    Pin,
    /// A line of at least three boxes with boxes attached on the same side of
    /// both ends (a "U").
    Saddle,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Motif {
    pub kind: MotifKind,
    pub anchors: BTreeSet<Cell>,
}

/// One of the eight symmetries of the square, acting on vertex coordinates.
///
/// A box is mapped by mapping its four corner vertices; the image anchor is
/// the componentwise minimum of the images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetry {
    pub flip_row: bool,
    pub flip_col: bool,
    pub transpose: bool,
}

impl Symmetry {
    pub fn all() -> impl Iterator<Item = Symmetry> {
        (0..8u8).map(|bits| Symmetry {
            flip_row: bits & 1 != 0,
            flip_col: bits & 2 != 0,
            transpose: bits & 4 != 0,
        })
    }

    pub fn apply_vertex(&self, (r, c): (i64, i64)) -> (i64, i64) {
        let r = if self.flip_row { -r } else { r };
        let c = if self.flip_col { -c } else { c };
        if self.transpose {
            (c, r)
        } else {
            (r, c)
        }
    }

    pub fn apply_box(&self, (r, c): (i64, i64)) -> (i64, i64) {
        let corners =
            [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)].map(|v| self.apply_vertex(v));
        let rr = corners.iter().map(|p| p.0).min().unwrap();
        let cc = corners.iter().map(|p| p.1).min().unwrap();
        (rr, cc)
    }
}

/// Canonical pin: a row of three boxes with the stub on top of the middle.
pub(crate) const PIN: [(i64, i64); 4] = [(1, 0), (1, 1), (1, 2), (0, 1)];
const SQUARE: [(i64, i64); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// Image of a box pattern under `sym`, returned together with the offset that
/// was subtracted to bring its minimum back to the origin.
pub(crate) fn transform_pattern(
    pattern: &[(i64, i64)],
    sym: Symmetry,
) -> (Vec<(i64, i64)>, (i64, i64)) {
    let moved: Vec<(i64, i64)> = pattern.iter().map(|&p| sym.apply_box(p)).collect();
    let r0 = moved.iter().map(|p| p.0).min().unwrap_or(0);
    let c0 = moved.iter().map(|p| p.1).min().unwrap_or(0);
    let normalized = moved.iter().map(|&(r, c)| (r - r0, c - c0)).collect();
    (normalized, (r0, c0))
}

fn placements(config: &Configuration, pattern: &[(i64, i64)]) -> Vec<BTreeSet<Cell>> {
    let mut found = Vec::new();
    let first = pattern[0];
    for m in config.iter() {
        let dr = m.anchor.row as i64 - first.0;
        let dc = m.anchor.col as i64 - first.1;
        if pattern
            .iter()
            .all(|&(r, c)| config.contains_signed(r + dr, c + dc))
        {
            found.push(
                pattern
                    .iter()
                    .map(|&(r, c)| Cell {
                        row: (r + dr) as u32,
                        col: (c + dc) as u32,
                    })
                    .collect(),
            );
        }
    }
    found
}

fn distinct_images(pattern: &[(i64, i64)]) -> BTreeSet<Vec<(i64, i64)>> {
    Symmetry::all()
        .map(|s| {
            let (mut p, _) = transform_pattern(pattern, s);
            p.sort();
            p
        })
        .collect()
}

fn saddles(config: &Configuration) -> Vec<BTreeSet<Cell>> {
    let mut found = Vec::new();
    for m in config.iter() {
        let (r, c) = (m.anchor.row as i64, m.anchor.col as i64);
        // (step along line, step to the side)
        for (along, side) in [((0i64, 1i64), (1i64, 0i64)), ((1, 0), (0, 1))] {
            let mut line = vec![(r, c)];
            loop {
                let last = *line.last().unwrap();
                let next = (last.0 + along.0, last.1 + along.1);
                if !config.contains_signed(next.0, next.1) {
                    break;
                }
                line.push(next);
                if line.len() < 3 {
                    continue;
                }
                let end = next;
                for sign in [-1i64, 1] {
                    let s0 = (r + sign * side.0, c + sign * side.1);
                    let s1 = (end.0 + sign * side.0, end.1 + sign * side.1);
                    if config.contains_signed(s0.0, s0.1) && config.contains_signed(s1.0, s1.1) {
                        let cells = line
                            .iter()
                            .chain([s0, s1].iter())
                            .map(|&(rr, cc)| Cell {
                                row: rr as u32,
                                col: cc as u32,
                            })
                            .collect();
                        found.push(cells);
                    }
                }
            }
        }
    }
    found
}

/// All placements of squares, pins and saddles contained in `config`, in
/// every rotation and reflection. Overlapping placements are all reported.
pub fn detect_motifs(config: &Configuration) -> BTreeSet<Motif> {
    let mut out = BTreeSet::new();
    for (kind, pattern) in [(MotifKind::Square, &SQUARE[..]), (MotifKind::Pin, &PIN[..])] {
        for image in distinct_images(pattern) {
            for anchors in placements(config, &image) {
                out.insert(Motif { kind, anchors });
            }
        }
    }
    for anchors in saddles(config) {
        out.insert(Motif {
            kind: MotifKind::Saddle,
            anchors,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(anchors: &[(u32, u32)]) -> Configuration {
        Configuration::from_anchors(anchors).unwrap()
    }

    fn kinds(c: &Configuration) -> Vec<MotifKind> {
        detect_motifs(c).into_iter().map(|m| m.kind).collect()
    }

    #[test]
    fn symmetry_group_has_eight_distinct_elements() {
        let images: BTreeSet<(i64, i64)> =
            Symmetry::all().map(|s| s.apply_vertex((1, 2))).collect();
        assert_eq!(images.len(), 8);
        assert_eq!(distinct_images(&PIN).len(), 4);
        assert_eq!(distinct_images(&SQUARE).len(), 1);
    }

    #[test]
    fn plus_contains_pins() {
        let plus = cfg(&[(1, 2), (2, 1), (2, 3), (3, 2), (2, 2)]);
        let motifs = detect_motifs(&plus);
        let expected: BTreeSet<Cell> = [(2, 1), (2, 2), (2, 3), (1, 2)]
            .into_iter()
            .map(|(row, col)| Cell { row, col })
            .collect();
        assert!(motifs.contains(&Motif {
            kind: MotifKind::Pin,
            anchors: expected
        }));
        assert_eq!(
            motifs.iter().filter(|m| m.kind == MotifKind::Pin).count(),
            4
        );
    }

    #[test]
    fn monotone_path_has_no_motif() {
        assert!(detect_motifs(&cfg(&[(2, 1), (2, 2), (1, 2), (1, 3)])).is_empty());
    }

    #[test]
    fn square_block() {
        assert_eq!(
            kinds(&cfg(&[(1, 1), (1, 2), (2, 1), (2, 2)])),
            vec![MotifKind::Square]
        );
    }

    #[test]
    fn saddle_u_but_not_z() {
        let u = cfg(&[(2, 1), (2, 2), (2, 3), (1, 1), (1, 3)]);
        assert_eq!(kinds(&u), vec![MotifKind::Saddle]);
        let z = cfg(&[(1, 1), (2, 1), (2, 2), (2, 3), (3, 3)]);
        assert!(detect_motifs(&z).is_empty());
        let vertical_u = cfg(&[(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (4, 3)]);
        assert_eq!(kinds(&vertical_u), vec![MotifKind::Saddle]);
    }
}
