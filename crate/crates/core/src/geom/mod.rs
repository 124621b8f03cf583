//! Exact geometric primitives over rational points.

mod hull;
mod place;
mod point;
mod position;
mod predicates;

pub(crate) use hull::radial_indices;
pub use hull::{convex_hull, hull_indices, radial_order, RadialSequence};
pub use place::{place_dummy, Side};
pub(crate) use place::{place_in, Direction};
pub use point::{Color, Point, PointId, PointKind, PointSet};
pub use position::{find_degeneracy, is_general_position, is_general_position_fast};
pub use predicates::{cmp_clockwise_from, cmp_xy, orientation, segments_cross, Orientation};

/// A segment between two points of a set, named by endpoint ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment(pub PointId, pub PointId);

/// Whether two segments, resolved against `ps`, cross.
pub fn segments_cross_in(a: Segment, b: Segment, ps: &PointSet) -> crate::Result<bool> {
    Ok(segments_cross(
        ps.point(a.0)?,
        ps.point(a.1)?,
        ps.point(b.0)?,
        ps.point(b.1)?,
    ))
}
