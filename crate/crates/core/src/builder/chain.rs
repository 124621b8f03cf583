use super::Engine;
use crate::error::{precondition, Error, Result};
use crate::geom::{hull_indices, orientation, Orientation, Point, PointId, PointSet};

/// Walks the hull of `pts` from `from` to `to` along the side facing `b`.
/// Both endpoints must be hull vertices; `b` must lie outside the hull.
fn walk(pts: &[&Point], b: &Point, from: usize, to: usize) -> Result<Vec<usize>> {
    let hull = hull_indices(pts)?;
    let pos = |v: usize| hull.iter().position(|&h| h == v);
    let (Some(i), Some(j)) = (pos(from), pos(to)) else {
        return Err(precondition("chain endpoints must be hull vertices"));
    };
    let n = hull.len();
    if i == j {
        return Ok(vec![from]);
    }
    let ccw: Vec<usize> = (0..n)
        .map(|s| hull[(i + s) % n])
        .take((j + n - i) % n + 1)
        .collect();
    // Along a counterclockwise hull the outside is to the right.
    if n == 2 || orientation(pts[ccw[0]], pts[ccw[1]], b) == Orientation::Clockwise {
        return Ok(ccw);
    }
    Ok((0..n)
        .map(|s| hull[(i + n - s) % n])
        .take((i + n - j) % n + 1)
        .collect())
}

/// The hull vertices of `part` between `from` and `to` seen from `b`, in
/// walking order from `from`.
pub fn visible_chain(
    part: &PointSet,
    b: &Point,
    from: PointId,
    to: PointId,
) -> Result<Vec<PointId>> {
    let refs: Vec<&Point> = part.iter().collect();
    let f = part.position(from).ok_or(Error::UnknownPoint(from))?;
    let t = part.position(to).ok_or(Error::UnknownPoint(to))?;
    Ok(walk(&refs, b, f, t)?
        .into_iter()
        .map(|i| refs[i].id)
        .collect())
}

impl Engine {
    pub fn chain(&self, part: &[usize], b: usize, from: usize, to: usize) -> Result<Vec<usize>> {
        let refs = self.refs(part);
        let local = |g: usize| {
            part.iter()
                .position(|&x| x == g)
                .ok_or(Error::UnknownPoint(self.pts[g].id))
        };
        Ok(walk(&refs, &self.pts[b], local(from)?, local(to)?)?
            .into_iter()
            .map(|i| part[i])
            .collect())
    }

    /// Indices of the edges of `chain` met by the line through `p, q`;
    /// touching counts.
    pub fn edges_met_by_line(&self, p: usize, q: usize, chain: &[usize]) -> Vec<usize> {
        let side = |v: usize| orientation(&self.pts[p], &self.pts[q], &self.pts[v]);
        chain
            .windows(2)
            .enumerate()
            .filter(|(_, w)| {
                let (a, b) = (side(w[0]), side(w[1]));
                a == Orientation::Collinear || b == Orientation::Collinear || a != b
            })
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_faces_the_viewer() {
        let part = PointSet::from_points(vec![
            Point::blue(0, -6, 1),
            Point::red(1, -3, 2),
            Point::red(2, -1, 5),
            Point::red(3, -6, 6),
        ])
        .unwrap();
        let b = Point::blue(9, 0, 0);
        let c = visible_chain(&part, &b, PointId(0), PointId(2)).unwrap();
        assert_eq!(c, vec![PointId(0), PointId(1), PointId(2)]);
        let c = visible_chain(&part, &b, PointId(2), PointId(0)).unwrap();
        assert_eq!(c, vec![PointId(2), PointId(1), PointId(0)]);
    }
}
