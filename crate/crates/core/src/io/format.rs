//! JSON files for instances and trees.
//!
//! Coordinates are exact: a string holding an integer or a fraction
//! (`"42"`, `"-3/7"`), or a JSON integer. Floats are rejected.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geom::{Color, Point, PointId, PointKind, PointSet};
use crate::tree::Tree;

pub const SCHEMA_VERSION: u32 = 1;

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Text(String),
    Int(i64),
}

impl Coord {
    fn of(r: &BigRational) -> Self {
        Coord::Text(r.to_string())
    }

    pub fn parse(&self) -> Result<BigRational> {
        match self {
            Coord::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            Coord::Text(s) => parse_rational(s),
        }
    }
}

/// Parses `"n"` or `"n/d"` with decimal integers and `d != 0`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || format_err(format!("coordinate {s:?} is not an integer or fraction"));
    let int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    match s.trim().split_once('/') {
        None => Ok(BigRational::from_integer(int(s.trim())?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err(format_err(format!(
                    "coordinate {s:?} has a zero denominator"
                )));
            }
            Ok(BigRational::new(int(n)?, d))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub id: u32,
    pub x: Coord,
    pub y: Coord,
    /// `"R"` or `"B"`.
    pub color: String,
    /// Host id, for a dummy point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dummy_of: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub points: Vec<PointRecord>,
}

impl InstanceFile {
    pub fn from_point_set(ps: &PointSet) -> Self {
        let points = ps
            .iter()
            .map(|p| PointRecord {
                id: p.id.0,
                x: Coord::of(&p.x),
                y: Coord::of(&p.y),
                color: color_code(p.color).to_string(),
                dummy_of: p.host().map(|h| h.0),
            })
            .collect();
        InstanceFile {
            version: SCHEMA_VERSION,
            points,
        }
    }

    pub fn to_point_set(&self) -> Result<PointSet> {
        check_version(self.version)?;
        let points = self
            .points
            .iter()
            .map(|r| {
                let color = match r.color.as_str() {
                    "R" => Color::Red,
                    "B" => Color::Blue,
                    c => {
                        return Err(format_err(format!(
                            "point {}: color {c:?} is not \"R\" or \"B\"",
                            r.id
                        )))
                    }
                };
                let kind = match r.dummy_of {
                    Some(h) => PointKind::Dummy { host: PointId(h) },
                    None => PointKind::Real,
                };
                Ok(Point::with_kind(
                    PointId(r.id),
                    r.x.parse()?,
                    r.y.parse()?,
                    color,
                    kind,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::from_points(points)
    }
}

fn color_code(c: Color) -> &'static str {
    match c {
        Color::Red => "R",
        Color::Blue => "B",
    }
}

fn check_version(v: u32) -> Result<()> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(format_err(format!(
            "unsupported schema version {v}, expected {SCHEMA_VERSION}"
        )))
    }
}

pub fn read_instance(json: &str) -> Result<PointSet> {
    let file: InstanceFile = serde_json::from_str(json).map_err(|e| format_err(e.to_string()))?;
    file.to_point_set()
}

pub fn write_instance(ps: &PointSet) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_point_set(ps)).expect("instance serializes")
}

/// Hex SHA-256 of the instance, independent of point order and of how the
/// coordinates were written.
pub fn instance_hash(ps: &PointSet) -> String {
    let mut pts: Vec<&Point> = ps.iter().collect();
    pts.sort_by_key(|p| p.id);
    let mut hasher = Sha256::new();
    for p in pts {
        let host = p.host().map_or(String::new(), |h| format!(" {}", h.0));
        hasher.update(format!(
            "{} {} {} {}{}\n",
            p.id.0,
            p.x,
            p.y,
            color_code(p.color),
            host
        ));
    }
    hasher
        .finalize()
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeMetadata {
    pub strategy: String,
    pub delta: usize,
    pub bound: usize,
    pub wall_time_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeFile {
    pub version: u32,
    pub instance_hash: String,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<TreeMetadata>,
}

impl TreeFile {
    pub fn new(ps: &PointSet, t: &Tree, metadata: Option<TreeMetadata>) -> Self {
        TreeFile {
            version: SCHEMA_VERSION,
            instance_hash: instance_hash(ps),
            edges: t.edges().iter().map(|&(a, b)| [a.0, b.0]).collect(),
            metadata,
        }
    }

    /// The tree, after checking that the file belongs to `ps` and every edge
    /// names points of `ps`.
    pub fn tree_for(&self, ps: &PointSet) -> Result<Tree> {
        check_version(self.version)?;
        let expected = instance_hash(ps);
        if self.instance_hash != expected {
            return Err(format_err(format!(
                "tree file is for instance {}, not {expected}",
                self.instance_hash
            )));
        }
        let mut t = Tree::new();
        for &[a, b] in &self.edges {
            for id in [a, b] {
                ps.point(PointId(id))?;
            }
            t.push(PointId(a), PointId(b));
        }
        Ok(t)
    }
}

pub fn read_tree(json: &str) -> Result<TreeFile> {
    let file: TreeFile = serde_json::from_str(json).map_err(|e| format_err(e.to_string()))?;
    check_version(file.version)?;
    Ok(file)
}

pub fn write_tree(file: &TreeFile) -> String {
    serde_json::to_string_pretty(file).expect("tree serializes")
}
