use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of a point, unique within a [`PointSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub u32);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn is_red(self) -> bool {
        self == Color::Red
    }

    pub fn is_blue(self) -> bool {
        self == Color::Blue
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    Real,
    /// A temporary red point placed next to a real red host.
    Dummy {
        host: PointId,
    },
}

/// Homogeneous integer form `(x, y, w)` of a rational point, `w > 0`.
///
/// `small` caches the same triple as `i128` when every component fits in
/// an `i64`, which lets the predicates try checked machine arithmetic first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Homogeneous {
    pub big: [BigInt; 3],
    pub small: Option<[i128; 3]>,
}

impl Homogeneous {
    fn new(x: &BigRational, y: &BigRational) -> Self {
        let w = x.denom().lcm(y.denom());
        let hx = x.numer() * (&w / x.denom());
        let hy = y.numer() * (&w / y.denom());
        let small = match (hx.to_i64(), hy.to_i64(), w.to_i64()) {
            (Some(a), Some(b), Some(c)) => Some([a as i128, b as i128, c as i128]),
            _ => None,
        };
        Homogeneous {
            big: [hx, hy, w],
            small,
        }
    }
}

/// A colored point with exact rational coordinates.
#[derive(Debug, Clone)]
pub struct Point {
    pub id: PointId,
    pub x: BigRational,
    pub y: BigRational,
    pub color: Color,
    pub kind: PointKind,
    pub(crate) hom: Homogeneous,
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.x == other.x
            && self.y == other.y
            && self.color == other.color
            && self.kind == other.kind
    }
}

impl Eq for Point {}

impl Point {
    pub fn new(id: PointId, x: BigRational, y: BigRational, color: Color) -> Self {
        Self::with_kind(id, x, y, color, PointKind::Real)
    }

    pub fn with_kind(
        id: PointId,
        x: BigRational,
        y: BigRational,
        color: Color,
        kind: PointKind,
    ) -> Self {
        let hom = Homogeneous::new(&x, &y);
        Point {
            id,
            x,
            y,
            color,
            kind,
            hom,
        }
    }

    /// Convenience constructor for integer coordinates.
    pub fn int(id: u32, x: i64, y: i64, color: Color) -> Self {
        Self::new(
            PointId(id),
            BigRational::from_integer(x.into()),
            BigRational::from_integer(y.into()),
            color,
        )
    }

    pub fn red(id: u32, x: i64, y: i64) -> Self {
        Self::int(id, x, y, Color::Red)
    }

    pub fn blue(id: u32, x: i64, y: i64) -> Self {
        Self::int(id, x, y, Color::Blue)
    }

    pub fn is_dummy(&self) -> bool {
        matches!(self.kind, PointKind::Dummy { .. })
    }

    pub fn host(&self) -> Option<PointId> {
        match self.kind {
            PointKind::Dummy { host } => Some(host),
            PointKind::Real => None,
        }
    }

    /// Largest absolute value among the coordinates.
    pub fn magnitude(&self) -> BigRational {
        let ax = self.x.abs();
        let ay = self.y.abs();
        if ax > ay {
            ax
        } else {
            ay
        }
    }
}

/// An indexed collection of points with unique ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    index: HashMap<PointId, usize>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let mut set = PointSet::new();
        for p in points {
            set.push(p)?;
        }
        set.check_dummy_hosts()?;
        Ok(set)
    }

    pub(crate) fn from_points_unchecked(points: Vec<Point>) -> Self {
        let index = points.iter().enumerate().map(|(i, p)| (p.id, i)).collect();
        PointSet { points, index }
    }

    pub fn push(&mut self, p: Point) -> Result<()> {
        if self.index.contains_key(&p.id) {
            return Err(Error::DuplicateId(p.id));
        }
        if p.is_dummy() && p.color != Color::Red {
            return Err(Error::InvalidDummy(p.id));
        }
        self.index.insert(p.id, self.points.len());
        self.points.push(p);
        Ok(())
    }

    fn check_dummy_hosts(&self) -> Result<()> {
        for p in &self.points {
            if let Some(host) = p.host() {
                match self.get(host) {
                    Some(h) if h.color == Color::Red && !h.is_dummy() => {}
                    _ => return Err(Error::InvalidDummy(p.id)),
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn get(&self, id: PointId) -> Option<&Point> {
        self.index.get(&id).map(|&i| &self.points[i])
    }

    pub fn point(&self, id: PointId) -> Result<&Point> {
        self.get(id).ok_or(Error::UnknownPoint(id))
    }

    pub fn contains(&self, id: PointId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn position(&self, id: PointId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn red_count(&self) -> usize {
        self.points.iter().filter(|p| p.color.is_red()).count()
    }

    pub fn blue_count(&self) -> usize {
        self.points.iter().filter(|p| p.color.is_blue()).count()
    }

    pub fn reds(&self) -> impl Iterator<Item = &Point> {
        self.points.iter().filter(|p| p.color.is_red())
    }

    pub fn blues(&self) -> impl Iterator<Item = &Point> {
        self.points.iter().filter(|p| p.color.is_blue())
    }

    /// The subset with the given ids, in the order given.
    pub fn subset(&self, ids: &[PointId]) -> Result<PointSet> {
        let pts = ids
            .iter()
            .map(|&id| self.point(id).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(PointSet::from_points_unchecked(pts))
    }

    /// A fresh id larger than every id in the set.
    pub fn next_id(&self) -> PointId {
        PointId(self.points.iter().map(|p| p.id.0 + 1).max().unwrap_or(0))
    }

    /// Largest absolute coordinate value in the set (zero when empty).
    pub fn max_magnitude(&self) -> BigRational {
        self.points
            .iter()
            .map(Point::magnitude)
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Drops every dummy point.
    pub fn without_dummies(&self) -> PointSet {
        PointSet::from_points_unchecked(
            self.points
                .iter()
                .filter(|p| !p.is_dummy())
                .cloned()
                .collect(),
        )
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
