//! Exact orientation and ordering predicates.
//!
//! Every predicate first tries checked `i128` arithmetic on the cached
//! homogeneous coordinates and falls back to arbitrary precision when a
//! product overflows. Results never depend on the path taken.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::point::{Homogeneous, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    fn from_sign(s: Ordering) -> Self {
        match s {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

fn det_small(a: &[i128; 3], b: &[i128; 3], c: &[i128; 3]) -> Option<Ordering> {
    // Cofactor expansion along the weight column.
    let m = |p: i128, q: i128, r: i128, s: i128| -> Option<i128> {
        p.checked_mul(q)?.checked_sub(r.checked_mul(s)?)
    };
    let t0 = a[2].checked_mul(m(b[0], c[1], c[0], b[1])?)?;
    let t1 = b[2].checked_mul(m(c[0], a[1], a[0], c[1])?)?;
    let t2 = c[2].checked_mul(m(a[0], b[1], b[0], a[1])?)?;
    Some(t0.checked_add(t1)?.checked_add(t2)?.cmp(&0))
}

fn det_big(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> Ordering {
    let t0 = &a[2] * (&b[0] * &c[1] - &c[0] * &b[1]);
    let t1 = &b[2] * (&c[0] * &a[1] - &a[0] * &c[1]);
    let t2 = &c[2] * (&a[0] * &b[1] - &b[0] * &a[1]);
    let d = t0 + t1 + t2;
    if d.is_zero() {
        Ordering::Equal
    } else if d.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn det_sign(a: &Homogeneous, b: &Homogeneous, c: &Homogeneous) -> Ordering {
    if let (Some(sa), Some(sb), Some(sc)) = (&a.small, &b.small, &c.small) {
        if sa[2] == 1 && sb[2] == 1 && sc[2] == 1 {
            let l = (sb[0] - sa[0]).checked_mul(sc[1] - sa[1]);
            let r = (sb[1] - sa[1]).checked_mul(sc[0] - sa[0]);
            if let (Some(l), Some(r)) = (l, r) {
                if let Some(d) = l.checked_sub(r) {
                    return d.cmp(&0);
                }
            }
        }
        if let Some(s) = det_small(sa, sb, sc) {
            return s;
        }
    }
    det_big(&a.big, &b.big, &c.big)
}

/// Sign of the cross product `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Orientation::from_sign(det_sign(&p.hom, &q.hom, &r.hom))
}

fn cmp_coord(a: &Homogeneous, b: &Homogeneous, axis: usize) -> Ordering {
    if let (Some(sa), Some(sb)) = (&a.small, &b.small) {
        if let (Some(l), Some(r)) = (sa[axis].checked_mul(sb[2]), sb[axis].checked_mul(sa[2])) {
            return l.cmp(&r);
        }
    }
    (&a.big[axis] * &b.big[2]).cmp(&(&b.big[axis] * &a.big[2]))
}

/// Lexicographic comparison by `(x, y)`.
pub fn cmp_xy(p: &Point, q: &Point) -> Ordering {
    cmp_coord(&p.hom, &q.hom, 0).then_with(|| cmp_coord(&p.hom, &q.hom, 1))
}

pub(crate) fn same_location(p: &Point, q: &Point) -> bool {
    cmp_xy(p, q) == Ordering::Equal
}

/// Whether `r`, known to be collinear with `p` and `q`, lies on the closed
/// segment `pq`.
fn on_segment(p: &Point, q: &Point, r: &Point) -> bool {
    let lo_x = cmp_coord(&p.hom, &q.hom, 0);
    let lo_y = cmp_coord(&p.hom, &q.hom, 1);
    let within = |axis: usize, ord: Ordering| -> bool {
        let (lo, hi) = if ord == Ordering::Greater {
            (q, p)
        } else {
            (p, q)
        };
        cmp_coord(&lo.hom, &r.hom, axis) != Ordering::Greater
            && cmp_coord(&r.hom, &hi.hom, axis) != Ordering::Greater
    };
    within(0, lo_x) && within(1, lo_y)
}

/// True iff closed segments `ab` and `cd` meet at a point interior to at
/// least one of them. Touching at a shared endpoint does not count.
pub fn segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let shared = [(a, c), (a, d), (b, c), (b, d)]
        .iter()
        .filter(|(p, q)| same_location(p, q))
        .count();
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    use Orientation::Collinear as Z;
    if shared > 0 {
        if shared >= 2 {
            // Same segment.
            return true;
        }
        // Only an overlap along a common line can add interior contact.
        if o1 != Z || o2 != Z {
            return false;
        }
        let (s, p, q) = if same_location(a, c) {
            (a, b, d)
        } else if same_location(a, d) {
            (a, b, c)
        } else if same_location(b, c) {
            (b, a, d)
        } else {
            (b, a, c)
        };
        // Overlap iff the free endpoints lie on the same side of the shared one.
        return on_segment(s, p, q) || on_segment(s, q, p);
    }
    if o1 != Z && o2 != Z && o3 != Z && o4 != Z {
        return o1 != o2 && o3 != o4;
    }
    (o1 == Z && on_segment(a, b, c))
        || (o2 == Z && on_segment(a, b, d))
        || (o3 == Z && on_segment(c, d, a))
        || (o4 == Z && on_segment(c, d, b))
}

/// Clockwise angular comparison around `pivot`, measured from the ray
/// `pivot -> reference`. Points on the reference ray come first.
pub fn cmp_clockwise_from(pivot: &Point, reference: &Point, u: &Point, v: &Point) -> Ordering {
    let half = |q: &Point| -> u8 {
        match orientation(pivot, reference, q) {
            Orientation::Clockwise => 0,
            Orientation::CounterClockwise => 1,
            Orientation::Collinear => {
                // On the reference ray (same direction) or the opposite ray.
                let same_dir = on_ray(pivot, reference, q);
                if same_dir {
                    0
                } else {
                    1
                }
            }
        }
    };
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    let ref_u =
        orientation(pivot, reference, u) == Orientation::Collinear && on_ray(pivot, reference, u);
    let ref_v =
        orientation(pivot, reference, v) == Orientation::Collinear && on_ray(pivot, reference, v);
    match (ref_u, ref_v) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    match orientation(pivot, u, v) {
        Orientation::Clockwise => Ordering::Less,
        Orientation::CounterClockwise => Ordering::Greater,
        Orientation::Collinear => Ordering::Equal,
    }
}

/// Whether collinear `q` lies on the ray from `o` through `r` (not behind `o`).
fn on_ray(o: &Point, r: &Point, q: &Point) -> bool {
    let sx = cmp_coord(&o.hom, &r.hom, 0);
    let sy = cmp_coord(&o.hom, &r.hom, 1);
    let tx = cmp_coord(&o.hom, &q.hom, 0);
    let ty = cmp_coord(&o.hom, &q.hom, 1);
    sx == tx && sy == ty
}
