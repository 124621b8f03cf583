//! Independent checks of claimed tree properties.
//!
//! Only the geometric predicates are shared with the builder.

use std::collections::{BTreeMap, HashMap};

use crate::error::{precondition, Result};
use crate::geom::{segments_cross, Color, PointId, PointSet};
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_spanning: bool,
    pub is_bichromatic: bool,
    pub is_plane: bool,
    pub max_degree: usize,
    pub bound: usize,
    pub blue_degree_histogram: BTreeMap<usize, usize>,
    pub red_max_degree: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.is_spanning && self.is_bichromatic && self.is_plane && self.max_degree <= self.bound
    }
}

/// Checks that `t` is a plane bichromatic spanning tree of `ps` with maximum
/// degree at most `bound`. Problems are reported, never returned as errors.
pub fn check_tree(ps: &PointSet, t: &Tree, bound: usize) -> ValidationReport {
    let mut violations = Vec::new();
    let n = ps.len();
    let mut is_bichromatic = true;
    let mut resolved = Vec::with_capacity(t.len());
    let mut deg: HashMap<PointId, usize> = HashMap::new();
    for &(a, b) in t.edges() {
        match (ps.get(a), ps.get(b)) {
            (Some(pa), Some(pb)) => {
                if pa.color == pb.color {
                    is_bichromatic = false;
                    violations.push(format!("edge {a}-{b} joins two points of one color"));
                }
                resolved.push((pa, pb));
                *deg.entry(a).or_insert(0) += 1;
                *deg.entry(b).or_insert(0) += 1;
            }
            _ => {
                is_bichromatic = false;
                violations.push(format!("edge {a}-{b} has an endpoint outside the set"));
            }
        }
    }

    // Spanning: n - 1 distinct edges connecting every point.
    let index: HashMap<PointId, usize> = ps.iter().enumerate().map(|(i, p)| (p.id, i)).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut acyclic = true;
    for &(a, b) in t.edges() {
        if let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                acyclic = false;
                violations.push(format!("edge {a}-{b} closes a cycle"));
            } else {
                parent[ri] = rj;
            }
        }
    }
    let roots = (0..n).filter(|&i| find(&mut parent, i) == i).count();
    let is_spanning = acyclic && t.len() + 1 == n.max(1) && roots <= 1 && resolved.len() == t.len();
    if !is_spanning && acyclic {
        violations.push(format!(
            "{} edges over {} points leave {} components",
            t.len(),
            n,
            roots
        ));
    }

    let mut is_plane = true;
    for i in 0..resolved.len() {
        for j in i + 1..resolved.len() {
            let (a, b) = resolved[i];
            let (c, d) = resolved[j];
            if segments_cross(a, b, c, d) {
                is_plane = false;
                violations.push(format!(
                    "edges {}-{} and {}-{} cross",
                    a.id, b.id, c.id, d.id
                ));
            }
        }
    }

    let mut blue_degree_histogram = BTreeMap::new();
    let mut red_max_degree = 0;
    for p in ps.iter() {
        let d = deg.get(&p.id).copied().unwrap_or(0);
        match p.color {
            Color::Blue => *blue_degree_histogram.entry(d).or_insert(0) += 1,
            Color::Red => red_max_degree = red_max_degree.max(d),
        }
    }
    let max_degree = deg.values().copied().max().unwrap_or(0);
    if max_degree > bound {
        violations.push(format!("maximum degree {max_degree} exceeds {bound}"));
    }
    ValidationReport {
        is_spanning,
        is_bichromatic,
        is_plane,
        max_degree,
        bound,
        blue_degree_histogram,
        red_max_degree,
        violations,
    }
}

/// Whether the blue degrees are exactly one `k` and `|B| - 1` times `k + 1`.
pub fn check_blue_profile(ps: &PointSet, t: &Tree, k: usize) -> Result<bool> {
    let (nr, nb) = (ps.red_count(), ps.blue_count());
    if nb == 0 || nr != k * nb {
        return Err(precondition(format!(
            "blue profile needs |R| = k|B|, got |R|={nr}, |B|={nb}, k={k}"
        )));
    }
    let deg = t.degrees();
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for b in ps.blues() {
        *hist
            .entry(deg.get(&b.id).copied().unwrap_or(0))
            .or_insert(0) += 1;
    }
    let mut expected = BTreeMap::from([(k, 1)]);
    if nb > 1 {
        expected.insert(k + 1, nb - 1);
    }
    Ok(hist == expected)
}

/// `ceil((nr - 1) / nb) + 1`: some blue point has at least this degree in any
/// bichromatic spanning tree.
pub fn degree_lower_bound(nr: usize, nb: usize) -> usize {
    assert!(nb >= 1, "degree_lower_bound needs a blue point");
    (nr + nb - 1).div_ceil(nb)
}

/// `ceil((nr - 1) / nb)`.
pub fn delta(nr: usize, nb: usize) -> Result<usize> {
    if nb == 0 || nr < nb {
        return Err(precondition(format!(
            "delta needs 1 <= |B| <= |R|, got {nr}, {nb}"
        )));
    }
    Ok((nr - 1).div_ceil(nb))
}

/// The degree the main theorem guarantees: `max(3, delta + 1)`.
pub fn theorem_bound(nr: usize, nb: usize) -> Result<usize> {
    Ok((delta(nr, nb)? + 1).max(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn ps(points: Vec<Point>) -> PointSet {
        PointSet::from_points(points).unwrap()
    }

    fn t(edges: &[(u32, u32)]) -> Tree {
        Tree::from_edges(
            edges
                .iter()
                .map(|&(a, b)| (PointId(a), PointId(b)))
                .collect(),
        )
    }

    #[test]
    fn star_passes() {
        let s = ps(vec![
            Point::blue(0, 0, 0),
            Point::red(1, 1, 3),
            Point::red(2, -2, 1),
            Point::red(3, 3, -1),
        ]);
        let r = check_tree(&s, &t(&[(0, 1), (0, 2), (0, 3)]), 3);
        assert!(r.passes(), "{:?}", r.violations);
        assert_eq!(r.blue_degree_histogram, BTreeMap::from([(3, 1)]));
        assert_eq!(r.red_max_degree, 1);
    }

    #[test]
    fn crossing_detected() {
        let s = ps(vec![
            Point::red(0, 0, 0),
            Point::blue(1, 2, 2),
            Point::red(2, 2, 0),
            Point::blue(3, 0, 2),
        ]);
        let r = check_tree(&s, &t(&[(0, 1), (2, 3), (1, 2)]), 3);
        assert!(!r.is_plane);
        assert!(r.is_spanning);
    }

    #[test]
    fn monochromatic_edge_detected() {
        let s = ps(vec![
            Point::red(0, 0, 0),
            Point::red(1, 1, 0),
            Point::blue(2, 0, 1),
        ]);
        let r = check_tree(&s, &t(&[(0, 1), (0, 2)]), 3);
        assert!(!r.is_bichromatic);
    }

    #[test]
    fn disconnected_and_cyclic_detected() {
        let s = ps(vec![
            Point::red(0, 0, 0),
            Point::blue(1, 1, 0),
            Point::red(2, 5, 5),
            Point::blue(3, 6, 4),
        ]);
        assert!(!check_tree(&s, &t(&[(0, 1), (2, 3)]), 3).is_spanning);
        let r = check_tree(&s, &t(&[(0, 1), (0, 1), (2, 3)]), 3);
        assert!(!r.is_spanning);
    }

    #[test]
    fn blue_profile_examples() {
        let path = ps(vec![
            Point::red(0, 0, 0),
            Point::blue(1, 1, 1),
            Point::red(2, 2, 0),
        ]);
        assert!(check_blue_profile(&path, &t(&[(0, 1), (1, 2)]), 2).unwrap());
        let s = ps(vec![
            Point::blue(0, 0, 0),
            Point::blue(1, 10, 0),
            Point::red(2, -1, 3),
            Point::red(3, 2, 5),
            Point::red(4, 8, 5),
            Point::red(5, 11, 3),
        ]);
        // Both blues of degree 2 cannot happen in a tree; this edge set is not one.
        assert!(!check_blue_profile(&s, &t(&[(0, 2), (0, 3), (1, 4), (1, 5)]), 2).unwrap());
        assert!(check_blue_profile(&s, &t(&[(0, 2), (0, 3), (0, 4), (1, 4), (1, 5)]), 2).unwrap());
        assert!(check_blue_profile(&s, &t(&[]), 3).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(degree_lower_bound(5, 2), 3);
        assert_eq!(degree_lower_bound(4, 4), 2);
        assert_eq!(degree_lower_bound(9, 3), 4);
        assert_eq!(delta(5, 2).unwrap(), 2);
        assert_eq!(delta(4, 4).unwrap(), 1);
        assert_eq!(delta(7, 3).unwrap(), 2);
        assert!(delta(2, 3).is_err());
        assert_eq!(theorem_bound(4, 4).unwrap(), 3);
        assert_eq!(theorem_bound(9, 3).unwrap(), 4);
    }
}
