use std::cmp::Ordering;

use super::point::{Color, Point, PointId, PointSet};
use super::predicates::{cmp_clockwise_from, cmp_xy, orientation, Orientation};
use crate::error::{Error, Result};

/// Convex hull of `pts` as indices into the slice, counterclockwise,
/// starting from the lexicographically smallest point.
///
/// Any collinear triple met while building the chains is reported, which
/// covers every collinearity on the hull boundary.
pub fn hull_indices(pts: &[&Point]) -> Result<Vec<usize>> {
    let n = pts.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cmp_xy(pts[a], pts[b]));
    for w in order.windows(2) {
        if cmp_xy(pts[w[0]], pts[w[1]]) == Ordering::Equal {
            return Err(Error::DuplicatePoint(pts[w[0]].id, pts[w[1]].id));
        }
    }
    if n <= 2 {
        return Ok(order);
    }
    let mut chain: Vec<usize> = Vec::with_capacity(2 * n);
    let build = |iter: &mut dyn Iterator<Item = usize>, chain: &mut Vec<usize>, floor: usize| {
        for i in iter {
            while chain.len() >= floor + 2 {
                let a = chain[chain.len() - 2];
                let b = chain[chain.len() - 1];
                match orientation(pts[a], pts[b], pts[i]) {
                    Orientation::CounterClockwise => break,
                    Orientation::Clockwise => {
                        chain.pop();
                    }
                    Orientation::Collinear => {
                        return Err(Error::CollinearInput(pts[a].id, pts[b].id, pts[i].id));
                    }
                }
            }
            chain.push(i);
        }
        Ok(())
    };
    build(&mut order.iter().copied(), &mut chain, 0)?;
    let lower_len = chain.len();
    build(
        &mut order.iter().rev().skip(1).copied(),
        &mut chain,
        lower_len - 1,
    )?;
    chain.pop();
    if chain.len() < 3 {
        // Everything on one line (only possible with collinear input).
        let (a, b, c) = (order[0], order[1], order[2]);
        return Err(Error::CollinearInput(pts[a].id, pts[b].id, pts[c].id));
    }
    Ok(chain)
}

/// Counterclockwise hull vertex ids of `ps`.
pub fn convex_hull(ps: &PointSet) -> Result<Vec<PointId>> {
    let refs: Vec<&Point> = ps.iter().collect();
    Ok(hull_indices(&refs)?
        .into_iter()
        .map(|i| refs[i].id)
        .collect())
}

/// A pivot on the hull and the clockwise sequence of the other points around
/// it, starting at the pivot's counterclockwise-previous hull neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialSequence {
    pub pivot: PointId,
    pub reference: PointId,
    pub items: Vec<(PointId, Color)>,
}

impl RadialSequence {
    pub fn colors(&self) -> Vec<Color> {
        self.items.iter().map(|&(_, c)| c).collect()
    }

    pub fn ids(&self) -> Vec<PointId> {
        self.items.iter().map(|&(id, _)| id).collect()
    }
}

/// Indices (into `pts`) of the other points, clockwise around `pts[pivot]`
/// from its counterclockwise-previous hull neighbor. `hull` must be the
/// counterclockwise hull of `pts` and contain `pivot`.
pub(crate) fn radial_indices(pts: &[&Point], hull: &[usize], pivot: usize) -> Option<Vec<usize>> {
    let pos = hull.iter().position(|&h| h == pivot)?;
    let prev = hull[(pos + hull.len() - 1) % hull.len()];
    let mut rest: Vec<usize> = (0..pts.len()).filter(|&i| i != pivot).collect();
    let (p, r) = (pts[pivot], pts[prev]);
    rest.sort_by(|&u, &v| {
        if u == v {
            return Ordering::Equal;
        }
        if u == prev {
            return Ordering::Less;
        }
        if v == prev {
            return Ordering::Greater;
        }
        cmp_clockwise_from(p, r, pts[u], pts[v])
    });
    Some(rest)
}

pub fn radial_order(ps: &PointSet, pivot: PointId) -> Result<RadialSequence> {
    let refs: Vec<&Point> = ps.iter().collect();
    let pi = ps.position(pivot).ok_or(Error::UnknownPoint(pivot))?;
    if refs.len() == 2 {
        let other = refs[1 - pi];
        return Ok(RadialSequence {
            pivot,
            reference: other.id,
            items: vec![(other.id, other.color)],
        });
    }
    let hull = hull_indices(&refs)?;
    let order = radial_indices(&refs, &hull, pi).ok_or(Error::PivotNotOnHull(pivot))?;
    Ok(RadialSequence {
        pivot,
        reference: refs[order[0]].id,
        items: order.iter().map(|&i| (refs[i].id, refs[i].color)).collect(),
    })
}

/// Cyclic order of `others` around `center`, rotated to start at `others[0]`.
pub(crate) fn cyclic_order(center: &Point, others: &[&Point]) -> Vec<PointId> {
    if others.is_empty() {
        return Vec::new();
    }
    let reference = others[0];
    let mut v: Vec<&Point> = others.to_vec();
    v.sort_by(|u, w| {
        if u.id == w.id {
            Ordering::Equal
        } else if u.id == reference.id {
            Ordering::Less
        } else if w.id == reference.id {
            Ordering::Greater
        } else {
            cmp_clockwise_from(center, reference, u, w)
        }
    });
    v.into_iter().map(|p| p.id).collect()
}
