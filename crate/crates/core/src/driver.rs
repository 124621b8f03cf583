//! Picks a construction from the sizes of the two color classes and runs it.
//!
//! With `k = ceil(|R|/|B|)`:
//!
//! - `|R| = k|B|`: `plane_tree` directly.
//! - `|R| = (k-1)|B| + 1` with `k >= 3`: `proc2` from a red hull vertex, or,
//!   when the hull is all blue, a star of `k' + 1 = k` reds at a blue hull
//!   vertex with `proc2` on the two sides.
//! - otherwise, `|R| > |B|`: pad with dummies (pair-refine or unify).
//! - `|R| = |B|`: exhaustive search at small sizes only.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::builder::{run, BuildOptions, BuildStats, Engine, Set};
use crate::dummy::{build_pair_refine_with, build_unify_with};
use crate::error::{broken, precondition, Error, Result};
use crate::geom::{convex_hull, find_degeneracy, Point, PointId, PointSet};
use crate::oracle::{find_plane_tree_with_bound_capped, oracle_cap};
use crate::splits::scan_blue_k1;
use crate::tree::Tree;
use crate::validate::{check_tree, theorem_bound};

pub use crate::validate::delta;

/// How dummy points are removed on the padded route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    Auto,
    PairRefine,
    Unify,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::PairRefine => "pair-refine",
            Strategy::Unify => "unify",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "pair-refine" => Ok(Strategy::PairRefine),
            "unify" => Ok(Strategy::Unify),
            _ => Err(precondition(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    ExactMultiple,
    DummyRoute,
    Kprime1RedOnHull,
    Kprime1AllBlueHull,
    EqualSizesUnsupported,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::ExactMultiple => "exact-multiple",
            Branch::DummyRoute => "dummy-route",
            Branch::Kprime1RedOnHull => "kprime1-red-on-hull",
            Branch::Kprime1AllBlueHull => "kprime1-all-blue-hull",
            Branch::EqualSizesUnsupported => "equal-sizes",
        })
    }
}

/// The branch a pair of class sizes selects before any geometry is seen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeClass {
    /// `|R| = k|B|`, `k >= 2`.
    ExactMultiple {
        k: usize,
    },
    /// `(k-1)|B| < |R| < k|B|` and not `(k-1)|B| + 1` unless `k = 2`.
    DummyRoute {
        k: usize,
    },
    /// `|R| = k'|B| + 1`, `k' >= 2`.
    Kprime1 {
        k_prime: usize,
    },
    EqualSizes,
}

/// Classifies `1 <= nb <= nr`.
pub fn classify(nr: usize, nb: usize) -> Result<SizeClass> {
    if nb == 0 || nr < nb {
        return Err(precondition(format!(
            "need 1 <= |B| <= |R|, got |R|={nr}, |B|={nb}"
        )));
    }
    if nr == nb {
        return Ok(SizeClass::EqualSizes);
    }
    let k = nr.div_ceil(nb);
    Ok(if nr == k * nb {
        SizeClass::ExactMultiple { k }
    } else if k >= 3 && nr == (k - 1) * nb + 1 {
        SizeClass::Kprime1 { k_prime: k - 1 }
    } else {
        SizeClass::DummyRoute { k }
    })
}

/// What [`build`] will do on an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildPlan {
    pub nr: usize,
    pub nb: usize,
    pub delta: usize,
    /// `k` of the branch, or `k'` on the `Kprime1` branches; 1 for equal sizes.
    pub k: usize,
    /// `max(3, delta + 1)`.
    pub bound: usize,
    pub branch: Branch,
    /// The strategy actually used; only the dummy route distinguishes them.
    pub strategy: Strategy,
}

impl fmt::Display for BuildPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|R|={} |B|={} delta={} k={} bound={} branch={} strategy={}",
            self.nr, self.nb, self.delta, self.k, self.bound, self.branch, self.strategy
        )
    }
}

/// The branch [`build`] takes on `ps`, without building.
pub fn plan(ps: &PointSet, strategy: Strategy) -> Result<BuildPlan> {
    let (nr, nb) = (ps.red_count(), ps.blue_count());
    let class = classify(nr, nb)?;
    let (branch, k) = match class {
        SizeClass::EqualSizes => (Branch::EqualSizesUnsupported, 1),
        SizeClass::ExactMultiple { k } => (Branch::ExactMultiple, k),
        SizeClass::DummyRoute { k } => (Branch::DummyRoute, k),
        SizeClass::Kprime1 { k_prime } => {
            let branch = if red_hull_vertex(ps)?.is_some() {
                Branch::Kprime1RedOnHull
            } else {
                Branch::Kprime1AllBlueHull
            };
            (branch, k_prime)
        }
    };
    let strategy = match (branch, strategy) {
        (Branch::DummyRoute, Strategy::Unify) if k >= 4 => Strategy::Unify,
        _ => Strategy::PairRefine,
    };
    Ok(BuildPlan {
        nr,
        nb,
        delta: delta(nr, nb)?,
        k,
        bound: theorem_bound(nr, nb)?,
        branch,
        strategy,
    })
}

/// A finished build.
#[derive(Debug, Clone)]
pub struct Build {
    pub tree: Tree,
    pub plan: BuildPlan,
    pub stats: BuildStats,
    pub wall_time_ms: u128,
}

/// A plane bichromatic spanning tree of `ps` with maximum degree at most
/// `max(3, delta + 1)`.
pub fn build_tree(ps: &PointSet, strategy: Strategy) -> Result<Tree> {
    build(ps, strategy, BuildOptions::default()).map(|b| b.tree)
}

/// [`build_tree`] with its plan and counters. The output is validated before
/// it is returned.
pub fn build(ps: &PointSet, strategy: Strategy, opts: BuildOptions) -> Result<Build> {
    let start = Instant::now();
    if ps.iter().any(Point::is_dummy) {
        return Err(precondition("input must not contain dummy points"));
    }
    let refs: Vec<&Point> = ps.iter().collect();
    if let Some((a, b, c)) = find_degeneracy(&refs) {
        return Err(if a == c || b == c {
            Error::DuplicatePoint(a, b)
        } else {
            Error::CollinearInput(a, b, c)
        });
    }
    let plan = plan(ps, strategy)?;
    log::info!("plan: {plan}");
    let (tree, stats) = match plan.branch {
        Branch::ExactMultiple => crate::builder::plane_tree_with(ps, opts)?,
        Branch::DummyRoute => match plan.strategy {
            Strategy::Unify => (build_unify_with(ps, opts)?, BuildStats::default()),
            _ => {
                let (t, report) = build_pair_refine_with(ps, opts)?;
                (t, report.stats)
            }
        },
        Branch::Kprime1RedOnHull => {
            let r = red_hull_vertex(ps)?.expect("branch chosen for a red hull vertex");
            crate::builder::proc2_with(ps, r, opts)?
        }
        Branch::Kprime1AllBlueHull => {
            let hull = convex_hull(ps)?;
            let b = *hull.iter().min().expect("nonempty hull");
            let k_prime = plan.k;
            let e = Engine::new(ps.points().to_vec(), None, opts);
            let bi = ps.position(b).expect("hull vertex of ps");
            run(e, move |e, all| all_blue_hull(e, all, bi, k_prime))?
        }
        Branch::EqualSizesUnsupported => {
            let cap = oracle_cap();
            if ps.len() > cap {
                return Err(Error::EqualSizesUnsupported(plan.nb, cap));
            }
            let t = find_plane_tree_with_bound_capped(ps, plan.bound, cap)?
                .ok_or_else(|| broken("exhaustive search found no tree within the bound"))?;
            (t, BuildStats::default())
        }
    };
    log::debug!("stats: {stats:?}");
    let report = check_tree(ps, &tree, plan.bound);
    if !report.passes() {
        return Err(broken(format!(
            "output fails validation: {:?}",
            report.violations
        )));
    }
    Ok(Build {
        tree,
        plan,
        stats,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn red_hull_vertex(ps: &PointSet) -> Result<Option<PointId>> {
    let hull = convex_hull(ps)?;
    Ok(hull
        .into_iter()
        .filter(|&id| ps.point(id).is_ok_and(|p| p.color.is_red()))
        .min())
}

/// `|R| = k'|B| + 1` with every hull vertex blue: `b` takes the run of
/// `k' + 1` reds and `proc2` hangs each side below the run's end.
fn all_blue_hull(e: &mut Engine, set: Set, b: usize, k_prime: usize) -> Result<()> {
    let hull = e.hull(&set)?;
    let seq = e.radial(&set, b, &hull)?;
    let scan = scan_blue_k1(&e.colors(&seq), k_prime)?;
    let part1: Set = seq[scan.first_part()].to_vec();
    let part2: Set = seq[scan.second_part(seq.len())].to_vec();
    let run = &seq[scan.run()];
    for &r in run {
        e.edge(b, r);
    }
    let (first, last) = (run[0], run[run.len() - 1]);
    e.proc2(part1, first, k_prime)?;
    e.proc2(part2, last, k_prime)
}
