//! Acceptance criteria 1-9, one line of output per criterion.
//!
//! Run with `--nocapture` to see the report.

use std::time::{Duration, Instant};

use bctree::builder::{plane_tree, proc1, proc2};
use bctree::driver::{build, classify, plan, SizeClass, Strategy};
use bctree::dummy::{build_pair_refine, build_unify};
use bctree::geom::{convex_hull, Color, PointId, PointSet};
use bctree::io::{gen_convex, gen_double_chain, gen_double_chain_plus_red, gen_random};
use bctree::oracle::{find_plane_tree_with_bound_capped, min_plane_degree_capped};
use bctree::splits::{scan_blue, scan_blue_k1, scan_red, RedScan};
use bctree::validate::{check_blue_profile, check_tree, degree_lower_bound, theorem_bound};
use bctree::Tree;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUILD_LIMIT: Duration = Duration::from_secs(1);
const CHAIN_LIMIT: Duration = Duration::from_secs(60);
const SCALE_LIMIT: Duration = Duration::from_secs(60);

/// Pair-refine runs and how many of them left a dummy that was not a leaf.
#[derive(Default)]
struct LeafTally {
    runs: usize,
    failures: Vec<String>,
}

impl LeafTally {
    fn record(&mut self, ps: &PointSet, label: &str) -> Option<Tree> {
        self.runs += 1;
        match build_pair_refine(ps) {
            Ok((t, report)) => {
                if !report.dummies_were_leaves {
                    self.failures.push(label.to_string());
                }
                Some(t)
            }
            Err(e) => {
                self.failures.push(format!("{label}: {e}"));
                None
            }
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(results: &mut Vec<bool>, n: usize, name: &str, o: Outcome) {
    println!(
        "criterion {n} {name}: {} ({})",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail
    );
    results.push(o.pass);
}

fn is_dummy_route(nr: usize, nb: usize) -> bool {
    matches!(classify(nr, nb), Ok(SizeClass::DummyRoute { .. }))
}

fn criterion_1(tally: &mut LeafTally) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut failures, mut slowest) = (Vec::new(), Duration::ZERO);
    for i in 0..500u64 {
        let nb = rng.gen_range(1..=19);
        let nr = rng.gen_range(nb + 1..=40 - nb);
        let ps = if i % 4 == 3 {
            gen_convex(nr, nb, i)
        } else {
            gen_random(nr, nb, i)
        };
        let start = Instant::now();
        let built = build(&ps, Strategy::Auto, Default::default());
        let took = start.elapsed();
        slowest = slowest.max(took);
        let bound = theorem_bound(nr, nb).unwrap();
        match built {
            Ok(b) if check_tree(&ps, &b.tree, bound).passes() && took <= BUILD_LIMIT => {}
            Ok(_) => failures.push(format!("({nr},{nb},{i}) invalid or slow")),
            Err(e) => failures.push(format!("({nr},{nb},{i}): {e}")),
        }
        if is_dummy_route(nr, nb) {
            tally.record(&ps, &format!("c1 ({nr},{nb},{i})"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "500 instances, {} failures, slowest build {} ms <= {} ms{}",
            failures.len(),
            slowest.as_millis(),
            BUILD_LIMIT.as_millis(),
            first(&failures)
        ),
    }
}

fn first(failures: &[String]) -> String {
    failures
        .first()
        .map_or(String::new(), |f| format!("; first: {f}"))
}

/// Exact multiples with k in 2..=5 and at most 36 points.
fn exact_multiples() -> Vec<(usize, usize, usize, PointSet)> {
    let mut out = Vec::new();
    for k in 2..=5 {
        for nb in 1..=36 / (k + 1) {
            for seed in 0..4u64 {
                let ps = if seed == 3 {
                    gen_convex(k * nb, nb, seed)
                } else {
                    gen_random(k * nb, nb, seed)
                };
                out.push((k, nb, seed as usize, ps));
            }
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let cases = exact_multiples();
    let mut failures = Vec::new();
    for (k, nb, seed, ps) in &cases {
        let ok = plane_tree(ps).is_ok_and(|t| {
            check_tree(ps, &t, k + 1).passes() && check_blue_profile(ps, &t, *k).unwrap_or(false)
        });
        if !ok {
            failures.push(format!("k={k} |B|={nb} seed={seed}"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "{} instances, blue histogram {{k:1, k+1:|B|-1}} exact, {} failures{}",
            cases.len(),
            failures.len(),
            first(&failures)
        ),
    }
}

fn red_max(ps: &PointSet, t: &Tree) -> usize {
    ps.reds().map(|p| t.degree(p.id)).max().unwrap_or(0)
}

fn hull_vertex(ps: &PointSet, color: Color) -> Option<PointId> {
    convex_hull(ps)
        .ok()?
        .into_iter()
        .filter(|&id| ps.point(id).is_ok_and(|p| p.color == color))
        .min()
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = [0usize; 3];
    for (k, nb, seed, ps) in exact_multiples() {
        runs[0] += 1;
        match plane_tree(&ps) {
            Ok(t) if red_max(&ps, &t) <= 3 => {}
            _ => failures.push(format!("plane_tree k={k} |B|={nb} seed={seed}")),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..300u64 {
        let k = rng.gen_range(2..=4);
        let nb = rng.gen_range(1..=8);
        // proc1: k(|B|-1) < |R| <= k|B| at a blue hull vertex.
        let nr = rng.gen_range(k * (nb - 1) + 1..=k * nb);
        let ps = if i % 2 == 0 {
            gen_convex(nr, nb, i)
        } else {
            gen_random(nr, nb, i)
        };
        if let Some(b) = hull_vertex(&ps, Color::Blue) {
            runs[1] += 1;
            let want = nr - k * (nb - 1);
            match proc1(&ps, b, k) {
                Ok(t)
                    if red_max(&ps, &t) <= 3
                        && t.degree(b) == want
                        && check_tree(&ps, &t, k + 1).passes() => {}
                _ => failures.push(format!("proc1 ({nr},{nb}) k={k} seed={i}")),
            }
        }
        // proc2: |R| = k|B| + 1 at a red hull vertex.
        let ps = if i % 2 == 0 {
            gen_convex(k * nb + 1, nb, i)
        } else {
            gen_random(k * nb + 1, nb, i)
        };
        if let Some(r) = hull_vertex(&ps, Color::Red) {
            runs[2] += 1;
            match proc2(&ps, r) {
                Ok(t)
                    if red_max(&ps, &t) <= 3
                        && (1..=2).contains(&t.degree(r))
                        && check_tree(&ps, &t, k + 1).passes() => {}
                _ => failures.push(format!("proc2 ({},{nb}) k={k} seed={i}", k * nb + 1)),
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "plane_tree/proc1/proc2 runs {}/{}/{}, red degree <= 3, {} failures{}",
            runs[0],
            runs[1],
            runs[2],
            failures.len(),
            first(&failures)
        ),
    }
}

/// Minimum degree over all plane bichromatic spanning trees, by trying every
/// set of `n - 1` red-blue edges. Independent of the library's search.
fn brute_force_min_degree(ps: &PointSet) -> usize {
    let pts: Vec<(i128, i128, bool)> = ps
        .iter()
        .map(|p| {
            (
                p.x.to_i64().unwrap() as i128,
                p.y.to_i64().unwrap() as i128,
                p.color == Color::Red,
            )
        })
        .collect();
    let n = pts.len();
    if n == 1 {
        return 0;
    }
    let orient = |a: usize, b: usize, c: usize| {
        let (ax, ay, _) = pts[a];
        let (bx, by, _) = pts[b];
        let (cx, cy, _) = pts[c];
        ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)).signum()
    };
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| pts[i].2 != pts[j].2)
        .collect();
    let m = edges.len();
    let crosses = |e: (usize, usize), f: (usize, usize)| {
        let shared = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
        !shared
            && orient(e.0, e.1, f.0) != orient(e.0, e.1, f.1)
            && orient(f.0, f.1, e.0) != orient(f.0, f.1, e.1)
    };
    let cross: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| crosses(edges[i], edges[j])).collect())
        .collect();
    let mut best = usize::MAX;
    let mut pick = Vec::with_capacity(n - 1);
    fn walk(
        start: usize,
        need: usize,
        pick: &mut Vec<usize>,
        edges: &[(usize, usize)],
        cross: &[Vec<bool>],
        n: usize,
        best: &mut usize,
    ) {
        if pick.len() == need {
            // n - 1 edges without a cycle span the set.
            let mut root: Vec<usize> = (0..n).collect();
            fn find(r: &mut [usize], mut x: usize) -> usize {
                while r[x] != x {
                    x = r[x];
                }
                x
            }
            let mut deg = vec![0usize; n];
            for &i in pick.iter() {
                let (a, b) = edges[i];
                let (ra, rb) = (find(&mut root, a), find(&mut root, b));
                if ra == rb {
                    return;
                }
                root[ra] = rb;
                deg[a] += 1;
                deg[b] += 1;
            }
            *best = (*best).min(*deg.iter().max().unwrap());
            return;
        }
        for i in start..edges.len() {
            if edges.len() - i < need - pick.len() {
                break;
            }
            if pick.iter().any(|&j| cross[i][j]) {
                continue;
            }
            pick.push(i);
            walk(i + 1, need, pick, edges, cross, n, best);
            pick.pop();
        }
    }
    walk(0, n - 1, &mut pick, &edges, &cross, n, &mut best);
    best
}

fn criterion_4(tally: &mut LeafTally) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=9usize {
        for nb in 1..=n / 2 {
            let nr = n - nb;
            for seed in 0..12u64 {
                let ps = if seed % 3 == 2 {
                    gen_convex(nr, nb, seed)
                } else {
                    gen_random(nr, nb, seed)
                };
                count += 1;
                let label = format!("({nr},{nb},{seed})");
                let d_star = brute_force_min_degree(&ps);
                let lower = degree_lower_bound(nr, nb);
                let upper = theorem_bound(nr, nb).unwrap();
                let oracle = min_plane_degree_capped(&ps, 9).map(|(d, _)| d);
                if oracle.as_ref().ok() != Some(&d_star) {
                    failures.push(format!(
                        "{label}: oracle {oracle:?} vs brute force {d_star}"
                    ));
                }
                if !(lower <= d_star && d_star <= upper) {
                    failures.push(format!("{label}: {lower} <= {d_star} <= {upper} fails"));
                }
                match build(&ps, Strategy::Auto, Default::default()) {
                    Ok(b)
                        if check_tree(&ps, &b.tree, upper).passes()
                            && b.tree.max_degree() >= d_star => {}
                    _ => failures.push(format!("{label}: builder witness")),
                }
                if is_dummy_route(nr, nb) {
                    tally.record(&ps, &format!("c4 {label}"));
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty() && count >= 200,
        detail: format!(
            "{count} instances with |R|+|B| <= 9, lower <= d_star <= max(3, delta+1), oracle = brute force, {} failures{}",
            failures.len(),
            first(&failures)
        ),
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, ps) in [
        ("double chain m=4", gen_double_chain(4)),
        ("plus one red", gen_double_chain_plus_red(4)),
    ] {
        let cap = ps.len();
        let d_star = min_plane_degree_capped(&ps, cap).map(|(d, _)| d);
        let no_path = find_plane_tree_with_bound_capped(&ps, 2, cap).map(|t| t.is_none());
        let ok = d_star.as_ref().ok() == Some(&3) && no_path == Ok(true);
        pass &= ok;
        parts.push(format!(
            "{name} (|R|={}, |B|={}): d_star={d_star:?}",
            ps.red_count(),
            ps.blue_count()
        ));
    }
    let took = start.elapsed();
    pass &= took <= CHAIN_LIMIT;
    Outcome {
        pass,
        detail: format!(
            "{}; {} ms <= {} ms",
            parts.join(", "),
            took.as_millis(),
            CHAIN_LIMIT.as_millis()
        ),
    }
}

fn criterion_6(tally: &mut LeafTally) -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut high = 0;
    while high < 100 {
        let nb = rng.gen_range(1..=6);
        let k = rng.gen_range(4..=6);
        if nb == 1 {
            continue;
        }
        let nr = rng.gen_range((k - 1) * nb + 1..k * nb);
        if !is_dummy_route(nr, nb) {
            continue;
        }
        let seed = high as u64;
        let ps = gen_random(nr, nb, seed);
        high += 1;
        match build_unify(&ps) {
            Ok(t) if check_tree(&ps, &t, k + 1).passes() => {}
            _ => failures.push(format!("unify ({nr},{nb},{seed}) k={k}")),
        }
    }
    let (mut low, mut witness) = (0, None);
    for nb in 2..=8usize {
        for k in 2..=3usize {
            for nr in (k - 1) * nb + 1..k * nb {
                if !is_dummy_route(nr, nb) {
                    continue;
                }
                for seed in 0..6u64 {
                    let ps = gen_random(nr, nb, seed);
                    low += 1;
                    let unified = build_unify(&ps);
                    match &unified {
                        Ok(t) if check_tree(&ps, t, 5).passes() => {}
                        _ => failures.push(format!("unify ({nr},{nb},{seed}) k={k}")),
                    }
                    let refined = tally.record(&ps, &format!("c6 ({nr},{nb},{seed})"));
                    if let (Ok(u), Some(r), None) = (&unified, &refined, &witness) {
                        if u.max_degree() > 3 && check_tree(&ps, r, 3).passes() {
                            witness = Some(format!(
                                "({nr},{nb}) seed {seed}: unify {} vs pair-refine {}",
                                u.max_degree(),
                                r.max_degree()
                            ));
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty() && witness.is_some(),
        detail: format!(
            "{high} instances k >= 4 within k+1, {low} instances k in {{2,3}} within 5, witness {}, {} failures{}",
            witness.as_deref().unwrap_or("none"),
            failures.len(),
            first(&failures)
        ),
    }
}

fn criterion_7(tally: &LeafTally) -> Outcome {
    Outcome {
        pass: tally.failures.is_empty() && tally.runs > 0,
        detail: format!(
            "{} pair-refine runs, {} with a non-leaf dummy{}",
            tally.runs,
            tally.failures.len(),
            first(&tally.failures)
        ),
    }
}

fn shuffled(rng: &mut ChaCha8Rng, reds: usize, blues: usize) -> Vec<Color> {
    let mut v: Vec<Color> = std::iter::repeat_n(Color::Red, reds)
        .chain(std::iter::repeat_n(Color::Blue, blues))
        .collect();
    v.shuffle(rng);
    v
}

fn counts(c: &[Color]) -> (usize, usize) {
    let r = c.iter().filter(|c| c.is_red()).count();
    (r, c.len() - r)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    for i in 0..1000 {
        // Blue pivot: the sequence holds |B| - 1 >= 2 blues, first and last.
        let k = rng.gen_range(2..=5);
        let nb = rng.gen_range(3..=10);
        let nr = rng.gen_range(k * (nb - 1) + 1..=k * nb);
        let mut seq = vec![Color::Blue];
        seq.extend(shuffled(&mut rng, nr, nb - 3));
        seq.push(Color::Blue);
        let ok = scan_blue(&seq, k).is_ok_and(|s| {
            let (r1, b1) = counts(&seq[s.first_part()]);
            let (r2, b2) = counts(&seq[s.second_part(seq.len())]);
            s.len == nr - k * (nb - 1)
                && seq[s.run()].iter().all(|c| c.is_red())
                && r1 == k * b1 + 1
                && r2 == k * b2 + 1
                && b1 + b2 + 1 == nb
        });
        if !ok {
            failures.push(format!("blue #{i}"));
        }

        let kp = rng.gen_range(2..=5);
        let nb = rng.gen_range(3..=10);
        let nr = kp * nb + 1;
        let mut seq = vec![Color::Blue];
        seq.extend(shuffled(&mut rng, nr, nb - 3));
        seq.push(Color::Blue);
        let ok = scan_blue_k1(&seq, kp).is_ok_and(|s| {
            let (r1, b1) = counts(&seq[s.first_part()]);
            let (r2, b2) = counts(&seq[s.second_part(seq.len())]);
            s.len == kp + 1
                && seq[s.run()].iter().all(|c| c.is_red())
                && r1 == kp * b1 + 1
                && r2 == kp * b2 + 1
                && b1 + b2 + 1 == nb
        });
        if !ok {
            failures.push(format!("blue k' #{i}"));
        }

        // Red pivot: the sequence holds |R| - 1 >= 2 reds, first and last.
        let k = rng.gen_range(2..=5);
        let nb = rng.gen_range(1..=10);
        let nr = k * nb + 1;
        let mut seq = vec![Color::Red];
        seq.extend(shuffled(&mut rng, nr - 3, nb));
        seq.push(Color::Red);
        let ok = scan_red(&seq, k).is_ok_and(|s| {
            let (r1, b1) = counts(&seq[s.first_part()]);
            let (r2, b2) = counts(&seq[s.second_part(seq.len())]);
            match s {
                RedScan::Case1 { b, alpha } => {
                    seq[b].is_blue()
                        && 0 < alpha
                        && alpha < k
                        && r1 == k * (b1 - 1) + k - alpha
                        && r2 == k * (b2 - 1) + alpha
                        && b1 + b2 == nb + 1
                }
                RedScan::Case2 { b, b_prime } => {
                    b_prime == b + 1
                        && seq[b].is_blue()
                        && seq[b_prime].is_blue()
                        && r1 == k * b1
                        && r2 == k * b2
                        && b1 + b2 == nb
                }
            }
        });
        if !ok {
            failures.push(format!("red #{i}"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "1000 sequences per scan (blue, blue k', red), {} failures{}",
            failures.len(),
            first(&failures)
        ),
    }
}

fn criterion_9() -> Outcome {
    let (nr, nb) = (1334, 666);
    let ps = gen_random(nr, nb, 9);
    let start = Instant::now();
    let built = build(&ps, Strategy::Auto, Default::default());
    let report = built
        .as_ref()
        .ok()
        .map(|b| check_tree(&ps, &b.tree, theorem_bound(nr, nb).unwrap()));
    let took = start.elapsed();
    let branch = plan(&ps, Strategy::Auto).map(|p| p.branch);
    let pass = report.as_ref().is_some_and(|r| r.passes()) && took <= SCALE_LIMIT;
    Outcome {
        pass,
        detail: format!(
            "|R|={nr} |B|={nb} via {}, build and validate {} ms <= {} ms",
            branch.map_or("?".into(), |b| b.to_string()),
            took.as_millis(),
            SCALE_LIMIT.as_millis()
        ),
    }
}

#[test]
fn acceptance() {
    let mut tally = LeafTally::default();
    let mut results = Vec::new();
    report(&mut results, 1, "theorem bound", criterion_1(&mut tally));
    report(&mut results, 2, "blue degree profile", criterion_2());
    report(&mut results, 3, "red degrees", criterion_3());
    report(&mut results, 4, "oracle tightness", criterion_4(&mut tally));
    report(&mut results, 5, "double chain", criterion_5());
    report(&mut results, 6, "unify bound", criterion_6(&mut tally));
    report(&mut results, 7, "dummy leaves", criterion_7(&tally));
    report(&mut results, 8, "scan lemmas", criterion_8());
    report(&mut results, 9, "scale", criterion_9());
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, &p)| !p)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
