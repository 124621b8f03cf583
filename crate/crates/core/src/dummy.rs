//! Dummy red points that pad `|R|` up to `k|B|`, and the two ways of getting
//! rid of them again.
//!
//! [`build_unify`] builds on the padded set and merges every dummy into its
//! host afterwards, which can raise host degrees to 5. [`build_pair_refine`]
//! instead keeps every dummy a leaf while building: whenever the recursion is
//! about to hang a subtree below a dummy or a saturated host (a host whose
//! dummy is in the same subproblem), the dummy is moved next to another red
//! point or a batch of dummies is dropped, and the subproblem continues.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use log::debug;

use crate::builder::{with_stack, BuildOptions, BuildStats, Engine, Set};
use crate::error::{broken, precondition, Result};
use crate::geom::{place_dummy, place_in, Direction, PointId, PointSet, Side};
use crate::tree::Tree;

/// Which dummy stands in for which real red host.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DummyRegistry {
    pairs: BTreeMap<PointId, PointId>,
    omega: usize,
}

impl DummyRegistry {
    /// Number of dummies created initially.
    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn host(&self, dummy: PointId) -> Option<PointId> {
        self.pairs.get(&dummy).copied()
    }

    pub fn dummy_of(&self, host: PointId) -> Option<PointId> {
        self.pairs
            .iter()
            .find(|&(_, &h)| h == host)
            .map(|(&d, _)| d)
    }

    /// `(dummy, host)` pairs in dummy id order.
    pub fn pairs(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.pairs.iter().map(|(&d, &h)| (d, h))
    }

    pub fn is_saturated(&self, host: PointId) -> bool {
        self.pairs.values().any(|&h| h == host)
    }

    /// Real red points of `ps` without a dummy.
    pub fn unsaturated(&self, ps: &PointSet) -> Vec<PointId> {
        let hosts: BTreeSet<PointId> = self.pairs.values().copied().collect();
        ps.reds()
            .filter(|p| !p.is_dummy() && !hosts.contains(&p.id))
            .map(|p| p.id)
            .collect()
    }
}

/// `k` with `(k-1)|B| < |R| <= k|B|`.
fn padding_k(nr: usize, nb: usize) -> Result<usize> {
    if nb == 0 || nr <= nb {
        return Err(precondition(format!(
            "dummy padding needs |R| > |B| >= 1, got {nr}, {nb}"
        )));
    }
    Ok(nr.div_ceil(nb))
}

/// Adds `omega = k|B| - |R|` dummies next to the `omega` smallest-id red
/// points, where `(k-1)|B| < |R| < k|B|`.
pub fn make_dummies(ps: &PointSet, k: usize) -> Result<(PointSet, DummyRegistry)> {
    let (nr, nb) = (ps.red_count(), ps.blue_count());
    if k < 2 || nr <= (k - 1) * nb || nr >= k * nb {
        return Err(precondition(format!(
            "make_dummies needs (k-1)|B| < |R| < k|B|, got |R|={nr}, |B|={nb}, k={k}"
        )));
    }
    if ps.iter().any(|p| p.is_dummy()) {
        return Err(precondition("input already contains dummy points"));
    }
    let omega = k * nb - nr;
    let mut hosts: Vec<PointId> = ps.reds().map(|p| p.id).collect();
    hosts.sort();
    hosts.truncate(omega);
    let mut aug = ps.clone();
    let mut pairs = BTreeMap::new();
    for h in hosts {
        let d = place_dummy(&aug, h, Side::Left)?;
        pairs.insert(d.id, h);
        aug.push(d)?;
    }
    Ok((aug, DummyRegistry { pairs, omega }))
}

/// Partner links over engine indices. A dummy's partner is its host and a
/// host's partner is its dummy; a link whose other end is not in the current
/// subproblem simply does not count there.
pub(crate) struct Registry {
    pub partner: Vec<Option<usize>>,
    pub discarded: Vec<bool>,
}

/// A subproblem root after interception, with the subproblem it roots.
pub(crate) struct Rooted {
    pub set: Set,
    pub root: usize,
    pub k: usize,
    /// A leaf of the parent that was pulled into `set` as the new root.
    pub consumed: Option<usize>,
}

impl Engine {
    pub fn partner(&self, i: usize) -> Option<usize> {
        self.reg.as_ref().and_then(|r| r.partner[i])
    }

    pub fn host_of(&self, i: usize) -> Option<usize> {
        if self.pts[i].is_dummy() {
            self.partner(i)
        } else {
            None
        }
    }

    pub fn discard(&mut self, i: usize) {
        let reg = self.reg.as_mut().expect("discard needs a registry");
        debug_assert!(self.pts[i].is_dummy(), "only dummies are discarded");
        if let Some(h) = reg.partner[i].take() {
            if reg.partner[h] == Some(i) {
                reg.partner[h] = None;
            }
        }
        if !reg.discarded[i] {
            reg.discarded[i] = true;
            self.stats.discarded += 1;
        }
    }

    /// A dummy of `set` whose host is `h`, also through a stale link left
    /// behind when `h` received a relocated dummy elsewhere.
    pub fn dummy_hosted_by(&self, set: &[usize], h: usize) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&d| d != h && self.host_of(d) == Some(h))
    }

    /// `(dummy, host)` pairs with both ends in `set`, as positions in `set`.
    pub fn clone_pairs(&self, set: &[usize]) -> Vec<(usize, usize)> {
        let pos: HashMap<usize, usize> = set.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        set.iter()
            .enumerate()
            .filter_map(|(i, &g)| {
                let h = self.host_of(g)?;
                pos.get(&h).map(|&j| (i, j))
            })
            .collect()
    }

    fn is_unsaturated_in(&self, set: &[usize], i: usize) -> bool {
        self.is_red(i)
            && !self.pts[i].is_dummy()
            && self.partner(i).is_none_or(|d| !set.contains(&d))
    }

    fn child_k(&self, set: &[usize]) -> Result<usize> {
        let (nr, nb) = self.counts(set);
        if nb == 0 {
            return Ok(2);
        }
        if nr == 0 || (nr - 1) % nb != 0 {
            return Err(broken(format!(
                "subproblem with |R|={nr}, |B|={nb} is not k|B|+1"
            )));
        }
        Ok((nr - 1) / nb)
    }

    /// Replaces dummy `d` in `set` by a fresh dummy next to `u`.
    fn relocate(&mut self, set: &mut Set, d: usize, u: usize) -> Result<()> {
        let id = self.fresh_id();
        let others: Set = set.iter().copied().filter(|&x| x != d).collect();
        let refs = self.refs(&others);
        let host = others
            .iter()
            .position(|&x| x == u)
            .expect("new host in set");
        let clones = self.clone_pairs(&others);
        let p = place_in(&refs, host, Direction::Free, Side::Left, &clones, id)?;
        self.discard(d);
        let nd = self.pts.len();
        self.pts.push(p);
        let reg = self.reg.as_mut().expect("registry");
        reg.partner.push(Some(u));
        reg.discarded.push(false);
        reg.partner[u] = Some(nd);
        for x in set.iter_mut() {
            if *x == d {
                *x = nd;
            }
        }
        self.stats.relocations += 1;
        debug!("moved dummy {} next to {}", self.pts[d].id, self.pts[u].id);
        Ok(())
    }

    /// Makes `r`, a host whose dummy is in `set`, unsaturated. The dummy moves
    /// to the smallest-id unsaturated red outside `avoid`; failing that,
    /// `|B|` dummies are dropped. Returns the resulting `k`.
    pub fn pair_refine(&mut self, set: &mut Set, r: usize, avoid: &[usize]) -> Result<usize> {
        let d = self
            .dummy_hosted_by(set, r)
            .ok_or_else(|| broken("pair-refine on an unsaturated point"))?;
        let k = self.child_k(set)?;
        let cands: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&u| u != r && !avoid.contains(&u) && self.is_unsaturated_in(set, u))
            .collect();
        if let Some(u) = self.min_by_id(cands) {
            self.relocate(set, d, u)?;
            return Ok(k);
        }
        let k = self.drop_dummies(set, d, avoid, k)?;
        Ok(k)
    }

    /// Removes `|B|` dummies of `set`, `first` among them, lowering `k` by 1.
    fn drop_dummies(
        &mut self,
        set: &mut Set,
        first: usize,
        avoid: &[usize],
        k: usize,
    ) -> Result<usize> {
        let (_, nb) = self.counts(set);
        if k < 3 {
            return Err(broken(format!("no unsaturated red point and k = {k}")));
        }
        let mut rest: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&x| x != first && self.pts[x].is_dummy() && !avoid.contains(&x))
            .collect();
        rest.sort_by_key(|&x| self.pts[x].id);
        if rest.len() + 1 < nb {
            return Err(broken("too few dummies to drop"));
        }
        let mut gone = vec![first];
        gone.extend(rest.into_iter().take(nb - 1));
        for &g in &gone {
            self.discard(g);
        }
        set.retain(|x| !gone.contains(x));
        self.stats.refinements += 1;
        Ok(k - 1)
    }

    /// Turns `root`, about to become a `proc2` root below a parent, into an
    /// unsaturated real point. `swappable` are parent leaves that may be
    /// pulled in to replace a dummy root whose host is among them.
    pub fn normalize_root(
        &mut self,
        mut set: Set,
        root: usize,
        swappable: &[usize],
    ) -> Result<Rooted> {
        let mut root = root;
        let mut consumed = None;
        if self.reg.is_some() {
            if let Some(h) = self.host_of(root) {
                if set.contains(&h) {
                    // The dummy moves away and its host, its clone in this
                    // subproblem, takes over.
                    self.pair_refine(&mut set, h, &[])?;
                    root = h;
                } else if swappable.contains(&h) {
                    for x in set.iter_mut() {
                        if *x == root {
                            *x = h;
                        }
                    }
                    self.discard(root);
                    self.stats.host_swaps += 1;
                    root = h;
                    consumed = Some(h);
                } else {
                    return Err(broken(format!(
                        "dummy {} would span a subtree without its host",
                        self.pts[root].id
                    )));
                }
            } else if self.partner(root).is_some_and(|d| set.contains(&d)) {
                self.pair_refine(&mut set, root, &[])?;
            }
        }
        let k = self.child_k(&set)?;
        Ok(Rooted {
            set,
            root,
            k,
            consumed,
        })
    }

    /// A red hull vertex of `set` suitable as the host of the temporary root
    /// of `plane-tree`. Returns it with the possibly lowered `k`.
    pub fn choose_red_pivot(&mut self, set: &mut Set, mut k: usize) -> Result<(usize, usize)> {
        if self.reg.is_none() {
            let hull = self.hull(set)?;
            return Ok((self.min_by_id(hull).expect("nonempty hull"), k));
        }
        for _ in 0..=set.len() {
            let hull = self.hull(set)?;
            let good: Vec<usize> = hull
                .iter()
                .copied()
                .filter(|&v| self.is_unsaturated_in(set, v))
                .collect();
            if let Some(a) = self.min_by_id(good) {
                return Ok((a, k));
            }
            let v = self.min_by_id(hull.iter().copied()).expect("nonempty hull");
            let d = if self.pts[v].is_dummy() {
                v
            } else {
                self.partner(v).expect("saturated")
            };
            let avoid: Vec<usize> = [v, d].into_iter().chain(self.partner(d)).collect();
            let cands: Vec<usize> = set
                .iter()
                .copied()
                .filter(|&u| !avoid.contains(&u) && self.is_unsaturated_in(set, u))
                .collect();
            match self.min_by_id(cands) {
                Some(u) => self.relocate(set, d, u)?,
                None => {
                    // plane-tree keeps |R| = k|B|: drop |B| dummies.
                    let (nr, nb) = self.counts(set);
                    let dummies = set.iter().filter(|&&x| self.pts[x].is_dummy()).count();
                    if k < 3 || dummies < nb || nr != k * nb {
                        return Err(broken("no red hull vertex can be made unsaturated"));
                    }
                    let mut ds: Vec<usize> = set
                        .iter()
                        .copied()
                        .filter(|&x| x != d && self.pts[x].is_dummy())
                        .collect();
                    ds.sort_by_key(|&x| self.pts[x].id);
                    let mut gone = vec![d];
                    gone.extend(ds.into_iter().take(nb - 1));
                    for &g in &gone {
                        self.discard(g);
                    }
                    set.retain(|x| !gone.contains(x));
                    self.stats.refinements += 1;
                    k -= 1;
                }
            }
        }
        Err(broken("red pivot selection did not settle"))
    }
}

/// Counters and checks of one [`build_pair_refine`] run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairRefineReport {
    pub k: usize,
    pub stats: BuildStats,
    /// Every dummy left at the end was a leaf.
    pub dummies_were_leaves: bool,
}

/// A plane bichromatic `(k+1)`-tree for `(k-1)|B| < |R| <= k|B|`, built on the
/// padded set with every dummy kept a leaf.
pub fn build_pair_refine(ps: &PointSet) -> Result<(Tree, PairRefineReport)> {
    build_pair_refine_with(ps, BuildOptions::default())
}

pub fn build_pair_refine_with(
    ps: &PointSet,
    opts: BuildOptions,
) -> Result<(Tree, PairRefineReport)> {
    let (nr, nb) = (ps.red_count(), ps.blue_count());
    let k = padding_k(nr, nb)?;
    if nr == k * nb {
        let (t, stats) = crate::builder::plane_tree_with(ps, opts)?;
        return Ok((
            t,
            PairRefineReport {
                k,
                stats,
                dummies_were_leaves: true,
            },
        ));
    }
    let (aug, reg) = make_dummies(ps, k)?;
    let index: HashMap<PointId, usize> = aug.iter().enumerate().map(|(i, p)| (p.id, i)).collect();
    let mut partner = vec![None; aug.len()];
    for (d, h) in reg.pairs() {
        partner[index[&d]] = Some(index[&h]);
        partner[index[&h]] = Some(index[&d]);
    }
    let n = aug.len();
    let registry = Registry {
        partner,
        discarded: vec![false; n],
    };
    let mut e = Engine::new(aug.points().to_vec(), Some(registry), opts);
    e.stats.dummies_created = reg.omega();
    with_stack(move || {
        let all = e.all();
        e.plane_tree(all, k)?;
        let mut deg = vec![0usize; e.pts.len()];
        for &(a, b) in &e.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut leaves = true;
        for (i, p) in e.pts.iter().enumerate() {
            let gone = e.is_discarded(i);
            if p.is_dummy() && ((gone && deg[i] > 0) || (!gone && deg[i] != 1)) {
                leaves = false;
            }
        }
        if !leaves {
            return Err(broken("a dummy point is not a leaf of the padded tree"));
        }
        let t = Tree::from_edges(
            e.edges
                .iter()
                .filter(|&&(a, b)| !e.pts[a].is_dummy() && !e.pts[b].is_dummy())
                .map(|&(a, b)| (e.pts[a].id, e.pts[b].id))
                .collect(),
        );
        Ok((
            t,
            PairRefineReport {
                k,
                stats: e.stats.clone(),
                dummies_were_leaves: leaves,
            },
        ))
    })
}

/// Merges every dummy of `t` into its host: the host takes over the dummy's
/// edges except the one toward itself.
pub fn unify(t: &Tree, reg: &DummyRegistry) -> Tree {
    let mut adj: BTreeMap<PointId, BTreeSet<PointId>> = BTreeMap::new();
    for &(a, b) in t.edges() {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    for (d, h) in reg.pairs() {
        let Some(nbrs) = adj.remove(&d) else { continue };
        for x in &nbrs {
            adj.get_mut(x).expect("symmetric").remove(&d);
        }
        // The neighbor of `d` on its path to `h` stays separated from `h`'s
        // side only through `d`; every other neighbor gets reattached.
        let toward = path_neighbor(&adj, &nbrs, h);
        for x in nbrs {
            if Some(x) != toward && x != h {
                adj.entry(h).or_default().insert(x);
                adj.entry(x).or_default().insert(h);
            }
        }
    }
    let mut edges = Vec::new();
    for (&a, ns) in &adj {
        for &b in ns {
            if a < b {
                edges.push((a, b));
            }
        }
    }
    Tree::from_edges(edges)
}

/// Which of `nbrs` lies in the component of `target` (adjacency without the
/// removed vertex).
fn path_neighbor(
    adj: &BTreeMap<PointId, BTreeSet<PointId>>,
    nbrs: &BTreeSet<PointId>,
    target: PointId,
) -> Option<PointId> {
    if nbrs.contains(&target) {
        return Some(target);
    }
    let mut seen = BTreeSet::from([target]);
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        for &w in adj.get(&v).into_iter().flatten() {
            if nbrs.contains(&w) {
                return Some(w);
            }
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    None
}

/// A plane bichromatic tree for `(k-1)|B| < |R| < k|B|` of degree at most
/// `max(5, k+1)`: `plane-tree` on the padded set, then [`unify`].
pub fn build_unify(ps: &PointSet) -> Result<Tree> {
    build_unify_with(ps, BuildOptions::default())
}

pub fn build_unify_with(ps: &PointSet, opts: BuildOptions) -> Result<Tree> {
    let (nr, nb) = (ps.red_count(), ps.blue_count());
    let k = padding_k(nr, nb)?;
    if nr == k * nb {
        return crate::builder::plane_tree_unchecked(ps, k, opts).map(|(t, _)| t);
    }
    let (aug, reg) = make_dummies(ps, k)?;
    let (t, _) = crate::builder::plane_tree_unchecked(&aug, k, opts)?;
    Ok(unify(&t, &reg))
}
