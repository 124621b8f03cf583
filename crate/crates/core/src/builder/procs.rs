use super::{hull_neighbors, without, Engine, Set};
use crate::error::{broken, precondition, Error, Result};
use crate::geom::{hull_indices, place_in, radial_indices, Direction, Point, Side};
use crate::splits::{scan_blue, scan_red, RedScan};

impl Engine {
    pub fn proc1(&mut self, set: Set, b: usize, k: usize) -> Result<()> {
        self.enter();
        let start = self.edges.len();
        let audit_set = set.clone();
        let res = self.proc1_inner(set, b, k);
        self.depth -= 1;
        res?;
        self.audit_subtree(&audit_set, start, k + 1)
    }

    fn proc1_inner(&mut self, set: Set, b: usize, k: usize) -> Result<()> {
        let (nr, nb) = self.counts(&set);
        if !set.contains(&b) || self.is_red(b) {
            return Err(precondition("proc1 pivot must be a blue point of the set"));
        }
        if k < 2 || nr <= k * (nb - 1) || nr > k * nb {
            return Err(precondition(format!(
                "proc1 needs k(|B|-1) < |R| <= k|B|, got |R|={nr}, |B|={nb}, k={k}"
            )));
        }
        if nb == 1 {
            for &r in &set {
                if r != b {
                    self.edge(b, r);
                }
            }
            return Ok(());
        }
        let alpha = nr - k * (nb - 1);
        let hull = self.hull(&set)?;
        let (p1, p2) = hull_neighbors(&hull, b).ok_or(Error::PivotNotOnHull(self.pts[b].id))?;
        if !self.is_red(p1) && !self.is_red(p2) {
            self.proc1_blue_neighbors(set, b, k, alpha, &hull)
        } else {
            self.proc1_peel(set, b, k, alpha)
        }
    }

    /// Both hull neighbors of `b` are blue: split at the run of `alpha` reds.
    fn proc1_blue_neighbors(
        &mut self,
        set: Set,
        b: usize,
        k: usize,
        alpha: usize,
        hull: &[usize],
    ) -> Result<()> {
        let seq = self.radial(&set, b, hull)?;
        let scan = scan_blue(&self.colors(&seq), k)?;
        let mut part1: Set = seq[scan.first_part()].to_vec();
        let mut part2: Set = seq[scan.second_part(seq.len())].to_vec();
        let run: Set = seq[scan.run()].to_vec();
        if alpha == 1 {
            return self.alpha_one(set, b, k, part1, part2, run[0]);
        }
        let (first, last) = (run[0], run[alpha - 1]);
        if self.partner(first) == Some(last) {
            // A pair whose two points are the ends of a run of two: keep the
            // host in both parts and continue with the run collapsed.
            let (host, dummy) = if self.pts[last].is_dummy() {
                (first, last)
            } else {
                (last, first)
            };
            self.discard(dummy);
            self.stats.mutual_collapses += 1;
            if dummy == first {
                *part1.last_mut().expect("part ends at the run") = host;
            } else {
                part2[0] = host;
            }
            let set = without(&set, &[dummy]);
            return self.alpha_one(set, b, k, part1, part2, host);
        }
        let interior: Set = run[1..alpha - 1].to_vec();
        let a = self.normalize_root(part1, first, &interior)?;
        let c = self.normalize_root(part2, last, &interior)?;
        for &x in &interior {
            if Some(x) != a.consumed && Some(x) != c.consumed {
                self.edge(b, x);
            }
        }
        self.edge(b, a.root);
        self.edge(b, c.root);
        self.proc2(a.set, a.root, a.k)?;
        self.proc2(c.set, c.root, c.k)
    }

    /// Some hull neighbor of `b` is red: peel red hull neighbors as leaves.
    fn proc1_peel(&mut self, set: Set, b: usize, k: usize, alpha: usize) -> Result<()> {
        let mut cur = set;
        let mut peeled: Set = Vec::new();
        while peeled.len() < alpha {
            let hull = self.hull(&cur)?;
            let (p, q) = hull_neighbors(&hull, b).ok_or(Error::PivotNotOnHull(self.pts[b].id))?;
            let cands: Vec<usize> = [p, q].into_iter().filter(|&x| self.is_red(x)).collect();
            if cands.is_empty() {
                break;
            }
            let prefer = peeled
                .last()
                .and_then(|&l| self.partner(l))
                .filter(|x| cands.contains(x));
            let x = prefer.or_else(|| self.min_by_id(cands)).expect("nonempty");
            peeled.push(x);
            cur.retain(|&i| i != x);
        }
        if peeled.len() == alpha {
            let xa = peeled[alpha - 1];
            let leaves = &peeled[..alpha - 1];
            let mut rest = without(&cur, &[b]);
            rest.push(xa);
            let rooted = self.normalize_root(rest, xa, leaves)?;
            for &x in leaves {
                if Some(x) != rooted.consumed {
                    self.edge(b, x);
                }
            }
            self.edge(b, rooted.root);
            self.proc2(rooted.set, rooted.root, rooted.k)
        } else {
            if peeled.is_empty() {
                return Err(broken("peeling found no red hull neighbor"));
            }
            for &x in &peeled {
                self.edge(b, x);
            }
            self.proc1(cur, b, k)
        }
    }

    pub fn proc2(&mut self, set: Set, r: usize, k: usize) -> Result<()> {
        self.enter();
        let start = self.edges.len();
        let audit_set = set.clone();
        let res = self.proc2_inner(set, r, k);
        self.depth -= 1;
        res?;
        if self.degree_since(start, r) > 2 {
            return Err(broken("proc2 root has degree above 2"));
        }
        self.audit_subtree(&audit_set, start, k + 1)
    }

    fn proc2_inner(&mut self, set: Set, r: usize, k: usize) -> Result<()> {
        let (nr, nb) = self.counts(&set);
        if !set.contains(&r) || !self.is_red(r) {
            return Err(precondition("proc2 root must be a red point of the set"));
        }
        if nb == 0 {
            return if set.len() == 1 {
                Ok(())
            } else {
                Err(precondition(
                    "proc2 without blue points needs a single red point",
                ))
            };
        }
        if k < 2 || nr != k * nb + 1 {
            return Err(precondition(format!(
                "proc2 needs |R| = k|B| + 1, got |R|={nr}, |B|={nb}, k={k}"
            )));
        }
        if nb == 1 {
            let b = *set.iter().find(|&&i| !self.is_red(i)).expect("one blue");
            for &x in &set {
                if x != b {
                    self.edge(b, x);
                }
            }
            return Ok(());
        }
        let hull = self.hull(&set)?;
        let (p1, p2) = hull_neighbors(&hull, r).ok_or(Error::PivotNotOnHull(self.pts[r].id))?;
        let blues: Vec<usize> = [p1, p2].into_iter().filter(|&x| !self.is_red(x)).collect();
        if let Some(b) = self.min_by_id(blues) {
            self.edge(r, b);
            return self.proc1(without(&set, &[r]), b, k);
        }
        let seq = self.radial(&set, r, &hull)?;
        self.red_split(seq, r, k)
    }

    /// Splits the radial sequence around red `r` and recurses at the split.
    fn red_split(&mut self, seq: Set, r: usize, k: usize) -> Result<()> {
        match scan_red(&self.colors(&seq), k)? {
            RedScan::Case1 { b, .. } => {
                let bp = seq[b];
                self.edge(r, bp);
                self.proc1(seq[..=b].to_vec(), bp, k)?;
                self.proc1(seq[b..].to_vec(), bp, k)
            }
            RedScan::Case2 { b, b_prime } => {
                let (bp, bq) = (seq[b], seq[b_prime]);
                self.edge(r, bp);
                self.edge(r, bq);
                self.proc1(seq[..=b].to_vec(), bp, k)?;
                self.proc1(seq[b_prime..].to_vec(), bq, k)
            }
        }
    }

    pub fn plane_tree(&mut self, set: Set, k: usize) -> Result<()> {
        self.enter();
        let start = self.edges.len();
        let audit_set = set.clone();
        let res = self.plane_tree_inner(set, k);
        self.depth -= 1;
        res?;
        self.audit_subtree(&audit_set, start, k + 1)
    }

    fn plane_tree_inner(&mut self, mut set: Set, k: usize) -> Result<()> {
        let (nr, nb) = self.counts(&set);
        if nb == 0 || k < 2 || nr != k * nb {
            return Err(precondition(format!(
                "plane-tree needs |R| = k|B| with k >= 2, got |R|={nr}, |B|={nb}"
            )));
        }
        let hull = self.hull(&set)?;
        let blues: Vec<usize> = hull.iter().copied().filter(|&x| !self.is_red(x)).collect();
        if let Some(b) = self.min_by_id(blues) {
            return self.proc1(set, b, k);
        }
        let (a, k) = self.choose_red_pivot(&mut set, k)?;
        let hull = self.hull(&set)?;
        let (p1, p2) = hull_neighbors(&hull, a).ok_or(Error::PivotNotOnHull(self.pts[a].id))?;

        // A temporary partner of `a` just outside the hull stands in as the
        // root of a `proc2` instance; it never enters the universe.
        let clones = self.clone_pairs(&set);
        let id = self.fresh_id();
        let refs = self.refs(&set);
        let local = |g: usize| set.iter().position(|&x| x == g).expect("in set");
        let temp = place_in(
            &refs,
            local(a),
            Direction::Hull {
                p1: refs[local(p1)],
                p2: refs[local(p2)],
            },
            Side::Left,
            &clones,
            id,
        )?;
        let mut aug: Vec<&Point> = refs;
        aug.push(&temp);
        let tpos = aug.len() - 1;
        let ahull = hull_indices(&aug)?;
        let order = radial_indices(&aug, &ahull, tpos)
            .ok_or_else(|| broken("temporary root is not a hull vertex"))?;
        let seq: Set = order.into_iter().map(|i| set[i]).collect();
        if seq.last() != Some(&a) {
            return Err(broken("temporary root does not see its host last"));
        }
        match scan_red(&self.colors(&seq), k)? {
            RedScan::Case1 { b, .. } => {
                let bp = seq[b];
                self.proc1(seq[..=b].to_vec(), bp, k)?;
                self.proc1(seq[b..].to_vec(), bp, k)
            }
            RedScan::Case2 { b, b_prime } => {
                let (bp, bq) = (seq[b], seq[b_prime]);
                self.edge(a, bp);
                self.edge(a, bq);
                self.proc1(seq[..=b].to_vec(), bp, k)?;
                self.proc1(without(&seq[b_prime..], &[a]), bq, k)
            }
        }
    }
}
