//! Seeded instance generators.

use std::collections::HashSet;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{Color, Point, PointSet};

fn colors(nr: usize, nb: usize, rng: &mut ChaCha8Rng) -> Vec<Color> {
    let mut c: Vec<Color> = std::iter::repeat_n(Color::Red, nr)
        .chain(std::iter::repeat_n(Color::Blue, nb))
        .collect();
    c.shuffle(rng);
    c
}

/// Direction from `p` to `q` with the gcd removed and the sign fixed, so two
/// points are collinear with `p` iff their keys agree.
fn direction_key(p: (i64, i64), q: (i64, i64)) -> (i64, i64) {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let g = dx.gcd(&dy);
    let (dx, dy) = (dx / g, dy / g);
    if dx < 0 || (dx == 0 && dy < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

/// `nr + nb` integer points in general position on a grid of side about
/// `10(nr + nb)`, colors shuffled. Deterministic per seed.
pub fn gen_random(nr: usize, nb: usize, seed: u64) -> PointSet {
    let n = nr + nb;
    let side = (10 * n).max(100) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut taken = HashSet::new();
    while pts.len() < n {
        let c = (rng.gen_range(0..side), rng.gen_range(0..side));
        if taken.contains(&c) {
            continue;
        }
        // c is collinear with two chosen points iff two of them share a
        // direction from c.
        let mut dirs = HashSet::with_capacity(pts.len());
        if pts.iter().all(|&p| dirs.insert(direction_key(c, p))) {
            taken.insert(c);
            pts.push(c);
        }
    }
    let cs = colors(nr, nb, &mut rng);
    let points = pts
        .into_iter()
        .zip(cs)
        .enumerate()
        .map(|(i, ((x, y), c))| Point::int(i as u32, x, y, c))
        .collect();
    PointSet::from_points(points).expect("distinct ids")
}

/// `nr + nb` points on the parabola `y = x^2` with distinct seeded `x`.
pub fn gen_convex(nr: usize, nb: usize, seed: u64) -> PointSet {
    let n = nr + nb;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = (4 * n as i64).max(8);
    let mut xs: Vec<i64> = (-range..=range).collect();
    xs.shuffle(&mut rng);
    xs.truncate(n);
    xs.sort();
    let cs = colors(nr, nb, &mut rng);
    let points = xs
        .into_iter()
        .zip(cs)
        .enumerate()
        .map(|(i, (x, c))| Point::int(i as u32, x, x * x, c))
        .collect();
    PointSet::from_points(points).expect("distinct ids")
}

/// Colors of the lower chain (left to right) and the upper chain (right to
/// left) of [`gen_double_chain`]; around the hull they read
/// `R^(m+2) B^m R^(m-2) B^m`.
fn double_chain_colors(m: usize) -> (Vec<Color>, Vec<Color>) {
    use std::iter::repeat_n;
    let lower = repeat_n(Color::Red, m + 2)
        .chain(repeat_n(Color::Blue, m - 2))
        .collect();
    let upper = repeat_n(Color::Blue, 2)
        .chain(repeat_n(Color::Red, m - 2))
        .chain(repeat_n(Color::Blue, m))
        .collect();
    (lower, upper)
}

/// Height of the upper chain's apex above the lower chain's.
fn double_chain_gap(m: usize) -> i64 {
    let w = 2 * m as i64;
    2 * w * w + 1
}

/// The double chain: `2m` points on an upward-opening chain `y = x^2` facing
/// `2m` points on a downward-opening chain above it, all in convex position,
/// with `|R| = |B| = 2m`. For `m >= 4` no plane bichromatic path exists, so
/// the best maximum degree is 3.
pub fn gen_double_chain(m: usize) -> PointSet {
    assert!(m >= 3, "double chain needs m >= 3");
    let (lower, upper) = double_chain_colors(m);
    let h = double_chain_gap(m);
    let xs = |i: usize| 2 * i as i64 - (2 * m as i64 - 1);
    let mut points = Vec::with_capacity(4 * m);
    for (i, &c) in lower.iter().enumerate() {
        let x = xs(i);
        points.push(Point::int(i as u32, x, x * x, c));
    }
    for (j, &c) in upper.iter().enumerate() {
        let x = xs(2 * m - 1 - j);
        points.push(Point::int((2 * m + j) as u32, x, h - x * x, c));
    }
    PointSet::from_points(points).expect("distinct ids")
}

/// [`gen_double_chain`] with one more red point on the upper chain's red run,
/// giving `|R| = |B| + 1` with best maximum degree 3 for `m >= 4`.
pub fn gen_double_chain_plus_red(m: usize) -> PointSet {
    let mut ps = gen_double_chain(m);
    // The run starts two places into the upper chain; the new point sits
    // halfway between its first two members, or past its only member.
    let j = 2usize;
    let x = 2 * (2 * m - 1 - j) as i64 - (2 * m as i64 - 1) - 1;
    let h = double_chain_gap(m);
    ps.push(Point::int(4 * m as u32, x, h - x * x, Color::Red))
        .expect("fresh id");
    ps
}
