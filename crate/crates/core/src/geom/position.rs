use std::cmp::Ordering;

use super::point::{Point, PointId, PointSet};
use super::predicates::{cmp_xy, orientation, Orientation};

/// Exhaustive check over all triples.
pub fn is_general_position(ps: &PointSet) -> bool {
    let pts = ps.points();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                if orientation(&pts[i], &pts[j], &pts[l]) == Orientation::Collinear {
                    return false;
                }
            }
        }
    }
    true
}

/// First collinear triple (or coincident pair, reported with a repeated id),
/// found in `O(n^2 log n)` by sorting directions around every point.
pub fn find_degeneracy(pts: &[&Point]) -> Option<(PointId, PointId, PointId)> {
    let n = pts.len();
    for i in 0..n {
        let p = pts[i];
        let mut others: Vec<&Point> = Vec::with_capacity(n - 1);
        for (j, q) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            if cmp_xy(p, q) == Ordering::Equal {
                return Some((p.id, q.id, q.id));
            }
            others.push(q);
        }
        // Fold every direction into the half-open upper half-plane, then two
        // points are collinear with p iff their folded directions agree.
        let upper = |q: &Point| cmp_xy(q, p) == Ordering::Greater;
        others.sort_by(|a, b| match (upper(a), upper(b)) {
            (true, true) | (false, false) => fold_cmp(p, a, b),
            (true, false) => fold_cmp_mixed(p, a, b),
            (false, true) => fold_cmp_mixed(p, b, a).reverse(),
        });
        for w in others.windows(2) {
            if orientation(p, w[0], w[1]) == Orientation::Collinear {
                return Some((p.id, w[0].id, w[1].id));
            }
        }
    }
    None
}

// Both points on the same side of p (in lexicographic order): order by angle.
fn fold_cmp(p: &Point, a: &Point, b: &Point) -> Ordering {
    match orientation(p, a, b) {
        Orientation::CounterClockwise => Ordering::Less,
        Orientation::Clockwise => Ordering::Greater,
        Orientation::Collinear => Ordering::Equal,
    }
}

// `a` above p, `b` below: compare a's direction with the reflection of b's.
fn fold_cmp_mixed(p: &Point, a: &Point, b: &Point) -> Ordering {
    // Reflecting b through p reverses the orientation sign.
    match orientation(p, a, b) {
        Orientation::CounterClockwise => Ordering::Greater,
        Orientation::Clockwise => Ordering::Less,
        Orientation::Collinear => Ordering::Equal,
    }
}

pub fn is_general_position_fast(ps: &PointSet) -> bool {
    let refs: Vec<&Point> = ps.iter().collect();
    find_degeneracy(&refs).is_none()
}
