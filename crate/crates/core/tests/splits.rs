use bctree::geom::Color::{self, Blue as B, Red as R};
use bctree::splits::{f_values, scan_blue, scan_blue_k1, scan_red, BlueScan, RedScan};
use proptest::prelude::*;

fn counts(c: &[Color]) -> (usize, usize) {
    let r = c.iter().filter(|c| c.is_red()).count();
    (r, c.len() - r)
}

/// Every run start around a blue pivot whose two parts satisfy
/// `|R_i| = k|B_i| + 1`.
fn valid_blue_runs(seq: &[Color], k: usize, len: usize) -> Vec<usize> {
    (1..seq.len())
        .filter(|&s| s + len < seq.len() && seq[s..s + len].iter().all(|c| c.is_red()))
        .filter(|&s| {
            let (r1, b1) = counts(&seq[..=s]);
            let (r2, b2) = counts(&seq[s + len - 1..]);
            r1 == k * b1 + 1 && r2 == k * b2 + 1
        })
        .collect()
}

#[test]
fn blue_scan_examples() {
    let seq = [B, R, R, R, R, R, B];
    assert_eq!(f_values(&seq, 2), vec![2, 1, 0, -1, -2, -3, -1]);
    let s = scan_blue(&seq, 2).unwrap();
    assert_eq!(s, BlueScan { start: 3, len: 1 });
    assert_eq!(
        (counts(&seq[s.first_part()]), counts(&seq[s.second_part(7)])),
        ((3, 1), (3, 1))
    );

    let seq = [B, R, R, R, R, R, R, B];
    assert_eq!(f_values(&seq, 2), vec![2, 1, 0, -1, -2, -3, -4, -2]);
    assert_eq!(scan_blue(&seq, 2).unwrap(), BlueScan { start: 3, len: 2 });

    let seq = [B, R, R, B, R, R, R, R, R, B];
    assert_eq!(f_values(&seq, 2), vec![2, 1, 0, 2, 1, 0, -1, -2, -3, -1]);
    let s = scan_blue(&seq, 2).unwrap();
    assert_eq!(s, BlueScan { start: 6, len: 1 });
    assert_eq!(counts(&seq[s.first_part()]).0, 5);
    assert_eq!(counts(&seq[s.second_part(10)]).0, 3);
}

#[test]
fn blue_k1_scan_example() {
    let seq = [B, R, R, R, R, R, R, R, B];
    assert_eq!(f_values(&seq, 2), vec![2, 1, 0, -1, -2, -3, -4, -5, -3]);
    let s = scan_blue_k1(&seq, 2).unwrap();
    assert_eq!(s, BlueScan { start: 3, len: 3 });
    assert_eq!(counts(&seq[s.first_part()]).0, 3);
    assert_eq!(counts(&seq[s.second_part(9)]).0, 3);
}

#[test]
fn red_scan_examples() {
    let seq = [R, B, R, B, R, R];
    assert_eq!(f_values(&seq, 2), vec![-1, 1, 0, 2, 1, 0]);
    let s = scan_red(&seq, 2).unwrap();
    assert_eq!(s, RedScan::Case1 { b: 1, alpha: 1 });
    assert_eq!(counts(&seq[s.first_part()]).0, 1);
    assert_eq!(counts(&seq[s.second_part(6)]).0, 3);

    let seq = [R, R, B, B, R, R];
    assert_eq!(f_values(&seq, 2), vec![-1, -2, 0, 2, 1, 0]);
    let s = scan_red(&seq, 2).unwrap();
    assert_eq!(s, RedScan::Case2 { b: 2, b_prime: 3 });
    assert_eq!(
        (counts(&seq[s.first_part()]), counts(&seq[s.second_part(6)])),
        ((2, 1), (2, 1))
    );

    assert_eq!(
        scan_red(&[R, B, R], 2).unwrap(),
        RedScan::Case1 { b: 1, alpha: 1 }
    );
}

#[test]
fn preconditions_are_checked() {
    assert!(scan_blue(&[R, R, B], 2).is_err());
    assert!(scan_blue(&[B, R, B], 2).is_err());
    assert!(scan_blue_k1(&[B, R, R, R, R, B], 2).is_err());
    assert!(scan_red(&[R, B, R, R], 2).is_err());
    assert!(scan_red(&[B, R, R], 2).is_err());
}

/// A blue-ended sequence with `blues` inner blues and `reds` reds.
fn blue_sequence(reds: usize, blues: usize) -> impl Strategy<Value = Vec<Color>> {
    Just([vec![R; reds], vec![B; blues]].concat())
        .prop_shuffle()
        .prop_map(|mid| [vec![B], mid, vec![B]].concat())
}

fn red_sequence(reds: usize, blues: usize) -> impl Strategy<Value = Vec<Color>> {
    Just([vec![R; reds], vec![B; blues]].concat())
        .prop_shuffle()
        .prop_map(|mid| [vec![R], mid, vec![R]].concat())
}

proptest! {
    #[test]
    fn blue_scan_finds_a_valid_run(
        (k, nb, nr, seq) in (2usize..5, 3usize..9)
            .prop_flat_map(|(k, nb)| (Just(k), Just(nb), k * (nb - 1) + 1..=k * nb))
            .prop_flat_map(|(k, nb, nr)| (Just(k), Just(nb), Just(nr), blue_sequence(nr, nb - 3)))
    ) {
        let s = scan_blue(&seq, k).unwrap();
        prop_assert_eq!(s.len, nr - k * (nb - 1));
        prop_assert!(valid_blue_runs(&seq, k, s.len).contains(&s.start));
        // The run starts right after the last zero of f.
        let f = f_values(&seq, k);
        prop_assert_eq!(f[s.start - 1], 0);
        prop_assert!(f[s.start..].iter().all(|&x| x != 0));
    }

    #[test]
    fn blue_k1_scan_finds_a_valid_run(
        (kp, seq) in (2usize..5, 3usize..9)
            .prop_flat_map(|(kp, nb)| (Just(kp), blue_sequence(kp * nb + 1, nb - 3)))
    ) {
        let s = scan_blue_k1(&seq, kp).unwrap();
        prop_assert_eq!(s.len, kp + 1);
        prop_assert!(valid_blue_runs(&seq, kp, s.len).contains(&s.start));
        prop_assert_eq!(*f_values(&seq, kp).last().unwrap(), -(kp as i64 + 1));
    }

    #[test]
    fn red_scan_size_equations(
        (k, seq) in (2usize..5, 1usize..9)
            .prop_flat_map(|(k, nb)| (Just(k), red_sequence(k * nb - 2, nb)))
    ) {
        let n = seq.len();
        let s = scan_red(&seq, k).unwrap();
        let (r1, b1) = counts(&seq[s.first_part()]);
        let (r2, b2) = counts(&seq[s.second_part(n)]);
        match s {
            RedScan::Case1 { b, alpha } => {
                prop_assert!(seq[b].is_blue() && 0 < alpha && alpha < k);
                prop_assert_eq!(r1, k * (b1 - 1) + k - alpha);
                prop_assert_eq!(r2, k * (b2 - 1) + alpha);
            }
            RedScan::Case2 { b, b_prime } => {
                prop_assert!(seq[b].is_blue() && seq[b_prime].is_blue() && b_prime == b + 1);
                prop_assert_eq!((r1, r2), (k * b1, k * b2));
            }
        }
    }
}
