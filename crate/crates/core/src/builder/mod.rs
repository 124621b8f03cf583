//! The recursive construction of plane bichromatic trees.
//!
//! `proc1` roots a tree at a blue hull vertex with a prescribed degree,
//! `proc2` roots one at a red hull vertex of degree one or two, and
//! `plane_tree` combines them for `|R| = k|B|`. All three work on index sets
//! into a shared point universe owned by an [`Engine`]; sub-calls never rename
//! points, so trees are merged by concatenating edge lists.

mod alpha_one;
mod chain;
mod procs;

use std::collections::HashSet;

pub use chain::visible_chain;

use crate::dummy::Registry;
use crate::error::{broken, precondition, Error, Result};
use crate::geom::{hull_indices, radial_indices, Color, Point, PointId, PointSet};
use crate::tree::Tree;
use crate::validate::check_tree;

/// Subsets up to this size get a full planarity audit in debug builds.
const AUDIT_LIMIT: usize = 48;

/// Stack reserved for the recursion; depth grows linearly with the input.
const STACK_BYTES: usize = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Validate intermediate trees (debug builds only).
    pub audit: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            audit: cfg!(debug_assertions),
        }
    }
}

/// Counters describing one build.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub calls: usize,
    pub max_depth: usize,
    pub dummies_created: usize,
    pub relocations: usize,
    pub refinements: usize,
    pub discarded: usize,
    pub host_swaps: usize,
    pub mutual_collapses: usize,
}

pub(crate) type Set = Vec<usize>;

pub(crate) struct Engine {
    pub pts: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
    pub reg: Option<Registry>,
    pub stats: BuildStats,
    audit: bool,
    depth: usize,
    next_id: u32,
}

impl Engine {
    pub fn new(pts: Vec<Point>, reg: Option<Registry>, opts: BuildOptions) -> Self {
        let next_id = pts.iter().map(|p| p.id.0 + 1).max().unwrap_or(0);
        Engine {
            pts,
            edges: Vec::new(),
            reg,
            stats: BuildStats::default(),
            audit: opts.audit && cfg!(debug_assertions),
            depth: 0,
            next_id,
        }
    }

    pub fn fresh_id(&mut self) -> PointId {
        let id = PointId(self.next_id);
        self.next_id += 1;
        id
    }

    pub fn all(&self) -> Set {
        (0..self.pts.len()).collect()
    }

    pub fn tree(&self) -> Tree {
        Tree::from_edges(
            self.edges
                .iter()
                .map(|&(a, b)| (self.pts[a].id, self.pts[b].id))
                .collect(),
        )
    }

    pub fn refs(&self, set: &[usize]) -> Vec<&Point> {
        set.iter().map(|&i| &self.pts[i]).collect()
    }

    pub fn color(&self, i: usize) -> Color {
        self.pts[i].color
    }

    pub fn is_red(&self, i: usize) -> bool {
        self.pts[i].color.is_red()
    }

    pub fn counts(&self, set: &[usize]) -> (usize, usize) {
        let nr = set.iter().filter(|&&i| self.is_red(i)).count();
        (nr, set.len() - nr)
    }

    pub fn min_by_id(&self, cands: impl IntoIterator<Item = usize>) -> Option<usize> {
        cands.into_iter().min_by_key(|&i| self.pts[i].id)
    }

    /// Counterclockwise hull of `set`, as universe indices.
    pub fn hull(&self, set: &[usize]) -> Result<Vec<usize>> {
        let refs = self.refs(set);
        Ok(hull_indices(&refs)?.into_iter().map(|i| set[i]).collect())
    }

    /// Clockwise order of `set - {pivot}` around hull vertex `pivot`.
    pub fn radial(&self, set: &[usize], pivot: usize, hull: &[usize]) -> Result<Vec<usize>> {
        let refs = self.refs(set);
        let local = |g: usize| set.iter().position(|&x| x == g);
        let lp = local(pivot).ok_or(Error::UnknownPoint(self.pts[pivot].id))?;
        let lhull: Vec<usize> = hull
            .iter()
            .map(|&g| local(g).expect("hull within set"))
            .collect();
        let order =
            radial_indices(&refs, &lhull, lp).ok_or(Error::PivotNotOnHull(self.pts[pivot].id))?;
        Ok(order.into_iter().map(|i| set[i]).collect())
    }

    pub fn colors(&self, seq: &[usize]) -> Vec<Color> {
        seq.iter().map(|&i| self.color(i)).collect()
    }

    pub fn edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(self.color(a), self.color(b), "monochromatic edge");
        self.edges.push((a, b));
    }

    fn enter(&mut self) {
        self.stats.calls += 1;
        self.depth += 1;
        self.stats.max_depth = self.stats.max_depth.max(self.depth);
    }

    /// Checks the edges added since `start` against `set`: a plane
    /// bichromatic spanning tree of the points still alive, degree at most
    /// `bound`, red degrees at most 3.
    fn audit_subtree(&self, set: &[usize], start: usize, bound: usize) -> Result<()> {
        if !self.audit || set.len() > AUDIT_LIMIT {
            return Ok(());
        }
        let mut verts: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&i| !self.is_discarded(i))
            .collect();
        let mut seen: HashSet<usize> = verts.iter().copied().collect();
        for &(a, b) in &self.edges[start..] {
            for v in [a, b] {
                if seen.insert(v) {
                    verts.push(v);
                }
            }
        }
        let ps =
            PointSet::from_points_unchecked(verts.iter().map(|&i| self.pts[i].clone()).collect());
        let t = Tree::from_edges(
            self.edges[start..]
                .iter()
                .map(|&(a, b)| (self.pts[a].id, self.pts[b].id))
                .collect(),
        );
        let report = check_tree(&ps, &t, bound);
        if !report.passes() || report.red_max_degree > 3 {
            return Err(broken(format!(
                "intermediate tree on {} points fails: {:?}",
                ps.len(),
                report.violations
            )));
        }
        Ok(())
    }

    pub fn degree_since(&self, start: usize, v: usize) -> usize {
        self.edges[start..]
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_discarded(&self, i: usize) -> bool {
        self.reg.as_ref().is_some_and(|r| r.discarded[i])
    }
}

/// Hull neighbors `(previous, next)` of `v` in a counterclockwise hull.
pub(crate) fn hull_neighbors(hull: &[usize], v: usize) -> Option<(usize, usize)> {
    let pos = hull.iter().position(|&h| h == v)?;
    let n = hull.len();
    Some((hull[(pos + n - 1) % n], hull[(pos + 1) % n]))
}

pub(crate) fn without(set: &[usize], drop: &[usize]) -> Set {
    set.iter().copied().filter(|i| !drop.contains(i)).collect()
}

/// Runs `f` on a thread with a large stack and returns its result.
pub(crate) fn with_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(STACK_BYTES)
            .spawn_scoped(s, f)
            .expect("spawn builder thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

fn engine_for(ps: &PointSet, opts: BuildOptions) -> Result<Engine> {
    if ps.iter().any(Point::is_dummy) {
        return Err(precondition("builder input must not contain dummy points"));
    }
    Ok(Engine::new(ps.points().to_vec(), None, opts))
}

/// Runs `f` on the full index set of `e` on a large stack.
pub(crate) fn run(
    mut e: Engine,
    f: impl FnOnce(&mut Engine, Set) -> Result<()> + Send,
) -> Result<(Tree, BuildStats)> {
    with_stack(move || {
        let all = e.all();
        f(&mut e, all)?;
        Ok((e.tree(), e.stats))
    })
}

pub(crate) fn index_of(ps: &PointSet, id: PointId) -> Result<usize> {
    ps.position(id).ok_or(Error::UnknownPoint(id))
}

/// `proc1`: a plane bichromatic `(k+1)`-tree in which blue hull vertex `b`
/// has degree `|R| - k(|B| - 1)` and every red point has degree at most 3.
pub fn proc1(ps: &PointSet, b: PointId, k: usize) -> Result<Tree> {
    proc1_with(ps, b, k, BuildOptions::default())
}

pub fn proc1_with(ps: &PointSet, b: PointId, k: usize, opts: BuildOptions) -> Result<Tree> {
    let bi = index_of(ps, b)?;
    run(engine_for(ps, opts)?, |e, all| e.proc1(all, bi, k)).map(|(t, _)| t)
}

/// `proc2`: for `|R| = k|B| + 1`, a plane bichromatic `(k+1)`-tree in which
/// red hull vertex `r` has degree 1 or 2.
pub fn proc2(ps: &PointSet, r: PointId) -> Result<Tree> {
    proc2_with(ps, r, BuildOptions::default()).map(|(t, _)| t)
}

pub fn proc2_with(ps: &PointSet, r: PointId, opts: BuildOptions) -> Result<(Tree, BuildStats)> {
    let ri = index_of(ps, r)?;
    let (nr, nb) = (ps.red_count(), ps.blue_count());
    let k = nr.saturating_sub(1).checked_div(nb).unwrap_or(2);
    run(engine_for(ps, opts)?, |e, all| e.proc2(all, ri, k))
}

/// `plane-tree`: for `|R| = k|B|`, `k >= 2`, a plane bichromatic
/// `(k+1)`-tree with all red degrees at most 3.
pub fn plane_tree(ps: &PointSet) -> Result<Tree> {
    plane_tree_with(ps, BuildOptions::default()).map(|(t, _)| t)
}

pub fn plane_tree_with(ps: &PointSet, opts: BuildOptions) -> Result<(Tree, BuildStats)> {
    let (nr, nb) = (ps.red_count(), ps.blue_count());
    if nb == 0 || nr % nb != 0 || nr / nb < 2 {
        return Err(precondition(format!(
            "plane-tree needs |R| = k|B| with k >= 2, got {nr}, {nb}"
        )));
    }
    run(engine_for(ps, opts)?, |e, all| e.plane_tree(all, nr / nb))
}

/// `plane-tree` on a set that may contain dummy points, treated as ordinary
/// red points.
pub(crate) fn plane_tree_unchecked(
    ps: &PointSet,
    k: usize,
    opts: BuildOptions,
) -> Result<(Tree, BuildStats)> {
    run(Engine::new(ps.points().to_vec(), None, opts), |e, all| {
        e.plane_tree(all, k)
    })
}
