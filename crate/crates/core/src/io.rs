//! JSON interchange formats.
//!
//! Rationals travel as strings, `"p/q"` or `"p"`, always written in lowest
//! terms. Point sets, norms and segment families share the layout
//!
//! ```json
//! { "dimension": 2, "points": [["0", "1/2"], ["3", "-1"]] }
//! ```
//!
//! with `"functionals"` in place of `"points"` for norms, and an extra
//! `"segments": [[i, j], ...]` list for families.

use serde::{Deserialize, Serialize};

use crate::census::PolytopalNorm;
use crate::error::{invalid, Result};
use crate::geometry::{Point, PointSet, Rat};
use crate::segments::Segment;

pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| invalid(format!("bad rational '{s}': {e}")))
}

fn parse_row(row: &[String]) -> Result<Vec<Rat>> {
    row.iter().map(|s| parse_rat(s)).collect()
}

fn format_row(row: &[Rat]) -> Vec<String> {
    row.iter().map(ToString::to_string).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("plain data serializes");
    out.push('\n');
    out
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| invalid(format!("malformed document: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub dimension: usize,
    pub points: Vec<Vec<String>>,
}

impl PointSetFile {
    pub fn from_set(set: &PointSet) -> Self {
        PointSetFile {
            dimension: set.ambient_dim(),
            points: set.points().iter().map(|p| format_row(p.coords())).collect(),
        }
    }

    pub fn to_set(&self) -> Result<PointSet> {
        let points = self
            .points
            .iter()
            .map(|row| parse_row(row).map(Point::new))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.dimension, points)
    }
}

pub fn write_point_set(set: &PointSet) -> String {
    to_json(&PointSetFile::from_set(set))
}

pub fn read_point_set(text: &str) -> Result<PointSet> {
    from_json::<PointSetFile>(text)?.to_set()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormFile {
    pub dimension: usize,
    pub functionals: Vec<Vec<String>>,
}

pub fn write_norm(norm: &PolytopalNorm) -> String {
    to_json(&NormFile {
        dimension: norm.dim(),
        functionals: norm.functionals().iter().map(|a| format_row(a)).collect(),
    })
}

pub fn read_norm(text: &str) -> Result<PolytopalNorm> {
    let file: NormFile = from_json(text)?;
    let functionals = file
        .functionals
        .iter()
        .map(|row| parse_row(row))
        .collect::<Result<Vec<_>>>()?;
    PolytopalNorm::new(file.dimension, functionals)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub dimension: usize,
    pub points: Vec<Vec<String>>,
    pub segments: Vec<[usize; 2]>,
}

impl FamilyFile {
    pub fn new(set: &PointSet, segments: &[Segment]) -> Self {
        let base = PointSetFile::from_set(set);
        FamilyFile {
            dimension: base.dimension,
            points: base.points,
            segments: segments
                .iter()
                .map(|s| {
                    let (a, b) = s.endpoints();
                    [a, b]
                })
                .collect(),
        }
    }

    pub fn to_parts(&self) -> Result<(PointSet, Vec<Segment>)> {
        let set = PointSetFile {
            dimension: self.dimension,
            points: self.points.clone(),
        }
        .to_set()?;
        let segments = self
            .segments
            .iter()
            .map(|&[a, b]| Segment::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok((set, segments))
    }
}
