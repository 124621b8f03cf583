use std::collections::{BTreeMap, BTreeSet};

use crate::geom::PointId;

/// An undirected edge list over point ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(PointId, PointId)>,
}

impl Tree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: Vec<(PointId, PointId)>) -> Self {
        Tree { edges }
    }

    pub fn push(&mut self, a: PointId, b: PointId) {
        self.edges.push((a, b));
    }

    pub fn edges(&self) -> &[(PointId, PointId)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, a: PointId, b: PointId) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    pub fn degrees(&self) -> BTreeMap<PointId, usize> {
        let mut deg = BTreeMap::new();
        for &(a, b) in &self.edges {
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        deg
    }

    pub fn degree(&self, id: PointId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == id || b == id)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().values().copied().max().unwrap_or(0)
    }

    /// Endpoints of all edges.
    pub fn vertices(&self) -> BTreeSet<PointId> {
        self.edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// Edges sorted with the smaller id first, for order-insensitive comparison.
    pub fn normalized(&self) -> Vec<(PointId, PointId)> {
        let mut e: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        e.sort();
        e
    }

    pub fn extend(&mut self, other: &Tree) {
        self.edges.extend_from_slice(&other.edges);
    }

    pub fn retain(&mut self, mut keep: impl FnMut(PointId, PointId) -> bool) {
        self.edges.retain(|&(a, b)| keep(a, b));
    }
}
