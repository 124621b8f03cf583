//! Exhaustive search over plane bichromatic spanning trees of small sets.
//!
//! Edges are tried shortest first. A branch is cut when a vertex would exceed
//! the degree bound, an edge closes a cycle or crosses a chosen edge, or the
//! edges still available can no longer connect every vertex.

use num_rational::BigRational;

use crate::error::{precondition, Error, Result};
use crate::geom::{segments_cross, Point, PointSet};
use crate::tree::Tree;
use crate::validate::degree_lower_bound;

/// Largest instance searched unless `BCTREE_ORACLE_CAP` says otherwise.
pub const DEFAULT_CAP: usize = 12;

/// Edge masks are `u128`.
const MAX_EDGES: usize = 128;

/// The size cap in effect: `BCTREE_ORACLE_CAP` when set to a number, else
/// [`DEFAULT_CAP`].
pub fn oracle_cap() -> usize {
    std::env::var("BCTREE_ORACLE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// The smallest maximum degree over all plane bichromatic spanning trees of
/// `ps`, with a tree attaining it.
pub fn min_plane_degree(ps: &PointSet) -> Result<(usize, Tree)> {
    min_plane_degree_capped(ps, oracle_cap())
}

/// [`min_plane_degree`] with an explicit size cap.
pub fn min_plane_degree_capped(ps: &PointSet, cap: usize) -> Result<(usize, Tree)> {
    let search = Search::new(ps, cap)?;
    if ps.len() == 1 {
        return Ok((0, Tree::new()));
    }
    let lower = degree_lower_bound(ps.red_count(), ps.blue_count());
    for d in lower..ps.len() {
        if let Some(t) = search.find(d) {
            return Ok((d, t));
        }
    }
    unreachable!("a plane bichromatic spanning tree always exists")
}

/// Whether some plane bichromatic spanning tree of `ps` has maximum degree at
/// most `d`.
pub fn exists_plane_tree_with_bound(ps: &PointSet, d: usize) -> Result<bool> {
    Ok(find_plane_tree_with_bound_capped(ps, d, oracle_cap())?.is_some())
}

/// A plane bichromatic spanning tree of `ps` with maximum degree at most `d`,
/// if one exists; searches sets of at most `cap` points.
pub fn find_plane_tree_with_bound_capped(
    ps: &PointSet,
    d: usize,
    cap: usize,
) -> Result<Option<Tree>> {
    let search = Search::new(ps, cap)?;
    if ps.len() == 1 {
        return Ok(Some(Tree::new()));
    }
    Ok(search.find(d))
}

struct Search<'a> {
    pts: &'a [Point],
    n: usize,
    /// Endpoints of every red-blue edge, shortest first.
    edges: Vec<(usize, usize)>,
    /// Edges crossing edge `i`.
    cross: Vec<u128>,
    /// Edges incident to vertex `v`.
    incident: Vec<u128>,
}

struct State {
    chosen: u128,
    excluded: u128,
    /// Edges crossing some chosen edge.
    blocked: u128,
    deg: Vec<usize>,
    comp: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(ps: &'a PointSet, cap: usize) -> Result<Self> {
        if ps.len() > cap {
            return Err(Error::TooLarge(ps.len(), cap));
        }
        let (nr, nb) = (ps.red_count(), ps.blue_count());
        if nb == 0 || (nr == 0 && ps.len() > 1) {
            return Err(precondition(
                "exhaustive search needs points of both colors",
            ));
        }
        if nr * nb > MAX_EDGES {
            return Err(Error::TooLarge(ps.len(), cap));
        }
        let pts = ps.points();
        let n = pts.len();
        let len2 = |a: &Point, b: &Point| -> BigRational {
            let (dx, dy) = (&a.x - &b.x, &a.y - &b.y);
            &dx * &dx + &dy * &dy
        };
        let mut edges: Vec<(usize, usize, BigRational)> = Vec::with_capacity(nr * nb);
        for i in 0..n {
            for j in i + 1..n {
                if pts[i].color != pts[j].color {
                    edges.push((i, j, len2(&pts[i], &pts[j])));
                }
            }
        }
        edges.sort_by(|a, b| a.2.cmp(&b.2).then((a.0, a.1).cmp(&(b.0, b.1))));
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b, _)| (a, b)).collect();
        let m = edges.len();
        let mut cross = vec![0u128; m];
        let mut incident = vec![0u128; n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            incident[a] |= 1 << i;
            incident[b] |= 1 << i;
            for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
                if segments_cross(&pts[a], &pts[b], &pts[c], &pts[d]) {
                    cross[i] |= 1 << j;
                    cross[j] |= 1 << i;
                }
            }
        }
        Ok(Search {
            pts,
            n,
            edges,
            cross,
            incident,
        })
    }

    fn find(&self, d: usize) -> Option<Tree> {
        if d == 0 {
            return None;
        }
        let mut st = State {
            chosen: 0,
            excluded: 0,
            blocked: 0,
            deg: vec![0; self.n],
            comp: (0..self.n).collect(),
        };
        if self.dfs(&mut st, d) {
            let edges = (0..self.edges.len())
                .filter(|&i| st.chosen >> i & 1 == 1)
                .map(|i| {
                    let (a, b) = self.edges[i];
                    (self.pts[a].id, self.pts[b].id)
                })
                .collect();
            Some(Tree::from_edges(edges))
        } else {
            None
        }
    }

    /// Edges that may still be added to the current forest.
    fn candidates(&self, st: &State, d: usize) -> u128 {
        let all = if self.edges.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.edges.len()) - 1
        };
        let mut full = 0u128;
        for v in 0..self.n {
            if st.deg[v] >= d {
                full |= self.incident[v];
            }
        }
        let mut cand = all & !st.chosen & !st.excluded & !st.blocked & !full;
        let mut rest = cand;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = self.edges[i];
            if st.comp[a] == st.comp[b] {
                cand &= !(1 << i);
            }
        }
        cand
    }

    /// Whether the candidate edges can still join all components.
    fn connectable(&self, st: &State, cand: u128) -> bool {
        fn find(root: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        let mut root: Vec<usize> = st.comp.clone();
        let mut parts = (0..self.n).filter(|&v| st.comp[v] == v).count();
        let mut rest = cand;
        while rest != 0 && parts > 1 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = self.edges[i];
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            if ra != rb {
                root[ra] = rb;
                parts -= 1;
            }
        }
        parts == 1
    }

    fn dfs(&self, st: &mut State, d: usize) -> bool {
        if st.chosen.count_ones() as usize == self.n - 1 {
            return true;
        }
        let cand = self.candidates(st, d);
        if cand == 0 || !self.connectable(st, cand) {
            return false;
        }
        let i = cand.trailing_zeros() as usize;
        let (a, b) = self.edges[i];

        // Take the edge.
        let saved = (st.chosen, st.blocked, st.comp.clone());
        let (ca, cb) = (st.comp[a], st.comp[b]);
        for c in st.comp.iter_mut() {
            if *c == ca {
                *c = cb;
            }
        }
        st.chosen |= 1 << i;
        st.blocked |= self.cross[i];
        st.deg[a] += 1;
        st.deg[b] += 1;
        if self.dfs(st, d) {
            return true;
        }
        st.deg[a] -= 1;
        st.deg[b] -= 1;
        (st.chosen, st.blocked, st.comp) = saved;

        // Leave it out for good on this branch.
        st.excluded |= 1 << i;
        let found = self.dfs(st, d);
        if !found {
            st.excluded &= !(1 << i);
        }
        found
    }
}
