//! Placement of a dummy point next to a red host.
//!
//! The dummy is put at `host + eps * dir`, with `eps` below a bound derived
//! from the coordinate sizes, and halved until the placement is verified
//! exactly. The verified condition is stronger than
//! preserving the cyclic order around the host: for every pair `p, q` of
//! other points, the dummy lies on the same side of `l(p, q)` as the host.
//! Every combinatorial decision that does not involve the host itself then
//! treats the dummy exactly like the host.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hull::{cyclic_order, hull_indices};
use super::point::{rational, Color, Point, PointId, PointKind, PointSet};
use super::predicates::{orientation, Orientation};
use crate::error::{precondition, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Halvings attempted before giving up; general position guarantees success
/// long before this.
const MAX_HALVINGS: usize = 400;

/// Where the displacement direction comes from.
pub(crate) enum Direction<'a> {
    /// Host is a hull vertex with counterclockwise-previous neighbor `p1` and
    /// next neighbor `p2`; the dummy slides along the supporting line.
    Hull { p1: &'a Point, p2: &'a Point },
    /// Any host: a slightly tilted horizontal direction.
    Free,
}

/// Places a dummy for `universe[host]` verified against every other point of
/// `universe`. `clones` lists `(dummy, host)` index pairs already present in
/// `universe`; the new dummy must not tell any of them apart either.
pub(crate) fn place_in(
    universe: &[&Point],
    host: usize,
    dir: Direction<'_>,
    side: Side,
    clones: &[(usize, usize)],
    id: PointId,
) -> Result<Point> {
    let h = universe[host];
    let m = universe
        .iter()
        .map(|p| p.magnitude())
        .max()
        .unwrap_or_else(BigRational::zero);
    let mut unit = direction(universe, host, &dir, &m)?;
    if side == Side::Right {
        unit = (-unit.0, -unit.1);
    }
    let mut eps = offset_bound(universe, &m);
    let anchors = anchors(universe);
    // The bound covers every pair of points with distinct anchors other than
    // the host, provided the dummies already present obey it too.
    let certified = anchors.as_ref().is_some_and(|a| {
        universe.iter().enumerate().all(|(i, p)| {
            !p.is_dummy() || {
                let q = universe[a[i]];
                (&p.x - &q.x).abs() + (&p.y - &q.y).abs() <= rational(2) * &eps
            }
        })
    });
    let two = rational(2);
    for _ in 0..MAX_HALVINGS {
        let d = Point::with_kind(
            id,
            &h.x + &eps * &unit.0,
            &h.y + &eps * &unit.1,
            Color::Red,
            PointKind::Dummy { host: h.id },
        );
        let ok = match (&anchors, certified) {
            (Some(a), true) => verify_certified(universe, a, host, &d, clones),
            _ => verify_exact(universe, host, &d, clones),
        };
        if ok {
            debug_assert!(universe.len() > 64 || verify_exact(universe, host, &d, clones));
            debug_assert!(universe.len() > 64 || same_cyclic_order(universe, host, &d));
            return Ok(d);
        }
        eps /= &two;
    }
    Err(Error::InternalInvariantBroken(format!(
        "no valid dummy offset found for host {}",
        h.id
    )))
}

/// The largest power of two at most `1 / (64 (m + 1) L^2)`, where `L` is the
/// common denominator of the real points.
///
/// Twice the area of a triangle on real points is a nonzero multiple of
/// `1 / L^2`. Moving each corner by at most twice this offset (in the 1-norm)
/// changes it by less than a quarter of that, so the sign survives.
fn offset_bound(universe: &[&Point], m: &BigRational) -> BigRational {
    let l = universe
        .iter()
        .filter(|p| !p.is_dummy())
        .fold(BigInt::one(), |l, p| l.lcm(&p.hom.big[2]));
    let limit = (m + BigRational::one()) * BigRational::from_integer(&l * &l * 64);
    let limit = limit.ceil().to_integer();
    let bits = limit.bits();
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// For each point, the index of itself or of its host; `None` when some host
/// is missing from `universe`.
fn anchors(universe: &[&Point]) -> Option<Vec<usize>> {
    let index: HashMap<PointId, usize> = universe
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_dummy())
        .map(|(i, p)| (p.id, i))
        .collect();
    universe
        .iter()
        .enumerate()
        .map(|(i, p)| match p.host() {
            Some(h) => index.get(&h).copied(),
            None => Some(i),
        })
        .collect()
}

/// Checks what [`offset_bound`] leaves open: collinearity with the host,
/// lines through two points of one anchor, and points anchored at the host
/// or at a clone's host.
fn verify_certified(
    universe: &[&Point],
    anchor: &[usize],
    host: usize,
    d: &Point,
    clones: &[(usize, usize)],
) -> bool {
    let h = universe[host];
    let n = universe.len();
    if (0..n).any(|i| i != host && orientation(h, d, universe[i]) == Orientation::Collinear) {
        return false;
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in (0..n).filter(|&i| i != host) {
        groups.entry(anchor[i]).or_default().push(i);
    }
    let side_kept = |i: usize, j: usize| {
        let (p, q) = (universe[i], universe[j]);
        orientation(p, q, d) == orientation(p, q, h)
    };
    for (&a, g) in &groups {
        if a == host {
            // Stale dummies of the host: every line through one of them.
            if !g
                .iter()
                .all(|&i| (0..n).all(|j| j == i || j == host || side_kept(i, j)))
            {
                return false;
            }
        } else if g.len() > 1 {
            for (x, &i) in g.iter().enumerate() {
                if !g[x + 1..].iter().all(|&j| side_kept(i, j)) {
                    return false;
                }
            }
        }
    }
    for &(cd, ch) in clones {
        if cd == host || ch == host {
            continue;
        }
        let open = (0..n)
            .filter(|&i| i != cd && i != ch && i != host && (anchor[i] == ch || anchor[i] == host));
        for i in open {
            let q = universe[i];
            if orientation(d, q, universe[cd]) != orientation(d, q, universe[ch]) {
                return false;
            }
        }
    }
    true
}

/// Every condition checked exactly, in quadratic time.
fn verify_exact(universe: &[&Point], host: usize, d: &Point, clones: &[(usize, usize)]) -> bool {
    let h = universe[host];
    let n = universe.len();
    if (0..n).any(|i| i != host && orientation(h, d, universe[i]) == Orientation::Collinear) {
        return false;
    }
    // Same side as the host for every line through two other points.
    for i in (0..n).filter(|&i| i != host) {
        for j in (i + 1..n).filter(|&j| j != host) {
            let (p, q) = (universe[i], universe[j]);
            if orientation(p, q, d) != orientation(p, q, h) {
                return false;
            }
        }
    }
    // Existing dummies keep looking like their hosts from the new dummy.
    for &(cd, ch) in clones {
        if cd == host || ch == host {
            continue;
        }
        for (i, q) in universe.iter().enumerate() {
            if i != cd
                && i != ch
                && i != host
                && orientation(d, q, universe[cd]) != orientation(d, q, universe[ch])
            {
                return false;
            }
        }
    }
    true
}

/// Displacement direction scaled so that its larger component is 1.
fn direction(
    universe: &[&Point],
    host: usize,
    dir: &Direction<'_>,
    m: &BigRational,
) -> Result<(BigRational, BigRational)> {
    let h = universe[host];
    let (dx, dy) = match dir {
        Direction::Hull { p1, p2 } => (&p1.x - &p2.x, &p1.y - &p2.y),
        Direction::Free => {
            // (-1, -tau) with tau small; skip the finitely many tau for which
            // host, dummy and some other point would be collinear.
            let base = rational(2) * m + rational(3);
            let mut step = 1i64;
            loop {
                let tau = rational(step) / &base;
                let probe = Point::new(
                    PointId(u32::MAX),
                    &h.x - BigRational::one(),
                    &h.y - &tau,
                    Color::Red,
                );
                let clear = universe
                    .iter()
                    .enumerate()
                    .all(|(i, q)| i == host || orientation(h, &probe, q) != Orientation::Collinear);
                if clear {
                    break (rational(-1), -tau);
                }
                step += 1;
            }
        }
    };
    let scale = if dx.abs() > dy.abs() {
        dx.abs()
    } else {
        dy.abs()
    };
    if scale.is_zero() {
        return Err(precondition("hull neighbors coincide"));
    }
    Ok((dx / &scale, dy / &scale))
}

fn same_cyclic_order(universe: &[&Point], host: usize, d: &Point) -> bool {
    let others: Vec<&Point> = universe
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != host)
        .map(|(_, p)| *p)
        .collect();
    cyclic_order(universe[host], &others) == cyclic_order(d, &others)
}

/// A dummy next to `host`, with a fresh id, verified against all of `ps`:
/// the augmented set stays in general position and the cyclic order of the
/// other points around the dummy equals the order around the host.
///
/// A hull-vertex host gets its dummy on the supporting line through it,
/// toward its counterclockwise-previous neighbor for [`Side::Left`].
pub fn place_dummy(ps: &PointSet, host: PointId, side: Side) -> Result<Point> {
    let hp = ps.point(host)?;
    if hp.color != Color::Red || hp.is_dummy() {
        return Err(precondition(format!(
            "dummy host {host} must be a real red point"
        )));
    }
    let refs: Vec<&Point> = ps.iter().collect();
    let hi = ps.position(host).expect("host looked up above");
    let hull = if refs.len() >= 3 {
        hull_indices(&refs)?
    } else {
        Vec::new()
    };
    let dir = match hull.iter().position(|&v| v == hi) {
        Some(pos) => Direction::Hull {
            p1: refs[hull[(pos + hull.len() - 1) % hull.len()]],
            p2: refs[hull[(pos + 1) % hull.len()]],
        },
        None => Direction::Free,
    };
    let clones: Vec<(usize, usize)> = refs
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.host().and_then(|h| ps.position(h)).map(|h| (i, h)))
        .collect();
    place_in(&refs, hi, dir, side, &clones, ps.next_id())
}
