//! `proc1` when the run around `b` is a single red point `r1` shared by both
//! parts.

use super::{without, Engine, Set};
use crate::error::{broken, Result};
use crate::geom::{orientation, Orientation};

/// One side of the split as seen from `b`: the part and its visible chain.
struct Side {
    part: Set,
    chain: Set,
    /// Position of the first red point of `chain`.
    s: usize,
}

impl Engine {
    pub(super) fn alpha_one(
        &mut self,
        set: Set,
        b: usize,
        k: usize,
        part1: Set,
        part2: Set,
        r1: usize,
    ) -> Result<()> {
        let side = |e: &Engine, part: Set, from: usize| -> Result<Side> {
            let chain = e.chain(&part, b, from, r1)?;
            let s = chain
                .iter()
                .position(|&v| e.is_red(v))
                .ok_or_else(|| broken("visible chain has no red point"))?;
            if s == 0 {
                return Err(broken("visible chain starts with a red point"));
            }
            Ok(Side { part, chain, s })
        };
        let x1 = part1[0];
        let y1 = *part2.last().expect("nonempty part");
        let mut one = side(self, part1, x1)?;
        let mut two = side(self, part2, y1)?;
        // A first red point equal to r1 on one side only: lead with the other.
        if one.chain[one.s] == r1 && two.chain[two.s] != r1 {
            std::mem::swap(&mut one, &mut two);
        }

        let hit1 = self.edges_met_by_line(one.chain[one.s - 1], one.chain[one.s], &two.chain);
        let hit2 = self.edges_met_by_line(two.chain[two.s - 1], two.chain[two.s], &one.chain);
        if hit1.is_empty() {
            return self.tangent_free(set, b, one.chain[one.s]);
        }
        if hit2.is_empty() {
            return self.tangent_free(set, b, two.chain[two.s]);
        }
        // The edge met last before the first red point; its first endpoint is
        // blue and sees the center.
        let last_before = |hits: &[usize], s: usize| hits.iter().copied().filter(|&i| i < s).max();
        if let Some(i) = last_before(&hit1, two.s) {
            let yi = two.chain[i];
            self.three_way(b, k, one, two.part, yi, r1)
        } else if let Some(i) = last_before(&hit2, one.s) {
            let xi = one.chain[i];
            self.three_way(b, k, two, one.part, xi, r1)
        } else {
            let yi = two.chain[two.s - 1];
            self.three_way(b, k, one, two.part, yi, r1)
        }
    }

    /// The tangent through `xs` misses the other part: hang everything but
    /// `b` below `xs`.
    fn tangent_free(&mut self, set: Set, b: usize, xs: usize) -> Result<()> {
        let rest = without(&set, &[b]);
        let rooted = self.normalize_root(rest, xs, &[])?;
        self.edge(b, rooted.root);
        self.proc2(rooted.set, rooted.root, rooted.k)
    }

    /// Joins `b`, the blue chain predecessor of `xs` and `yi` through a red
    /// center (normally `xs`), with `proc1` below the two blue points.
    fn three_way(
        &mut self,
        b: usize,
        k: usize,
        one: Side,
        p2: Set,
        yi: usize,
        r1: usize,
    ) -> Result<()> {
        let xs = one.chain[one.s];
        let xprev = one.chain[one.s - 1];
        let mut p1 = one.part;
        let mut p2 = p2;
        let mut k1 = k;
        let mut center = xs;

        if self.reg.is_some() {
            if xs != r1 {
                if self.host_of(xs) == Some(r1) {
                    center = r1;
                    self.discard(xs);
                } else if self.host_of(r1) == Some(xs) {
                    self.discard(r1);
                    p1.retain(|&x| x != r1);
                } else {
                    // Keep r1 and its partner on the same side first; a host
                    // pulled over from the other part is then available to
                    // receive the dummy of the center.
                    if let Some(h) = self.host_of(r1) {
                        if p2.contains(&h) {
                            p1.retain(|&x| x != r1);
                            p1.push(h);
                            p2.retain(|&x| x != h);
                            self.discard(r1);
                            self.stats.host_swaps += 1;
                        }
                    } else if let Some(d) = self.dummy_hosted_by(&p2, r1) {
                        p2.retain(|&x| x != d);
                        self.discard(d);
                    }
                    if let Some(h) = self.host_of(xs) {
                        if !p1.contains(&h) {
                            return Err(broken("dummy center without its host"));
                        }
                        center = h;
                        k1 = self.pair_refine(&mut p1, h, &[])?;
                    } else if self.dummy_hosted_by(&p1, xs).is_some() {
                        k1 = self.pair_refine(&mut p1, xs, &[])?;
                    }
                }
            } else if let Some(h) = self.host_of(r1) {
                if !p1.contains(&h) && !p2.contains(&h) {
                    return Err(broken("dummy center without its host"));
                }
                center = h;
                self.discard(r1);
            } else if let Some(d) = self.dummy_hosted_by(&p1, r1) {
                p1.retain(|&x| x != d);
                self.discard(d);
            } else if let Some(d) = self.dummy_hosted_by(&p2, r1) {
                p2.retain(|&x| x != d);
                self.discard(d);
            }
        }

        let child1 = without(&p1, &[xs, center]);
        let child2 = without(&p2, &[r1, center]);
        let yi = self.visible_blue(&child2, center, yi)?;
        self.edge(b, center);
        self.edge(xprev, center);
        self.edge(yi, center);
        self.proc1(child1, xprev, k1)?;
        self.proc1(child2, yi, k)
    }
}

impl Engine {
    /// `preferred` if the segment from `c` to it stays outside the hull of
    /// `part`, else the smallest-id blue hull vertex of `part` with that
    /// property.
    fn visible_blue(&self, part: &[usize], c: usize, preferred: usize) -> Result<usize> {
        let hull = self.hull(part)?;
        let n = hull.len();
        let visible = |pos: usize| {
            if n <= 2 {
                return true;
            }
            let v = hull[pos];
            let (prev, next) = (hull[(pos + n - 1) % n], hull[(pos + 1) % n]);
            let out = |a: usize, b: usize| {
                orientation(&self.pts[a], &self.pts[b], &self.pts[c]) == Orientation::Clockwise
            };
            out(prev, v) || out(v, next)
        };
        if let Some(pos) = hull.iter().position(|&v| v == preferred) {
            if visible(pos) {
                return Ok(preferred);
            }
        }
        let cands = (0..n)
            .filter(|&p| !self.is_red(hull[p]) && visible(p))
            .map(|p| hull[p]);
        self.min_by_id(cands)
            .ok_or_else(|| broken("no blue point of the part is visible from the center"))
    }
}
