//! Counting scans over radial sequences.
//!
//! Walking the sequence, `f` gains `k` at every blue item and loses 1 at
//! every red item. The scans work on bare color sequences; the id-level
//! wrappers attach the resulting parts to a [`RadialSequence`].

use crate::error::{broken, precondition, Result};
use crate::geom::{Color, PointId, PointSet, RadialSequence};

/// A run of consecutive red items found around a blue pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlueScan {
    /// Index of the first run item.
    pub start: usize,
    pub len: usize,
}

impl BlueScan {
    /// Items on or before the first run item.
    pub fn first_part(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.start
    }

    /// Items on or after the last run item, for a sequence of length `n`.
    pub fn second_part(&self, n: usize) -> std::ops::Range<usize> {
        self.start + self.len - 1..n
    }

    pub fn run(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// The split point found around a red pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedScan {
    /// `0 < f(b) = alpha < k`; `b` is shared by both parts.
    Case1 { b: usize, alpha: usize },
    /// `f(b) = 0`; the next item `b_prime` is blue and starts the second part.
    Case2 { b: usize, b_prime: usize },
}

impl RedScan {
    pub fn first_part(&self) -> std::ops::RangeInclusive<usize> {
        match *self {
            RedScan::Case1 { b, .. } | RedScan::Case2 { b, .. } => 0..=b,
        }
    }

    pub fn second_part(&self, n: usize) -> std::ops::Range<usize> {
        match *self {
            RedScan::Case1 { b, .. } => b..n,
            RedScan::Case2 { b_prime, .. } => b_prime..n,
        }
    }
}

fn count(colors: &[Color]) -> (usize, usize) {
    let reds = colors.iter().filter(|c| c.is_red()).count();
    (reds, colors.len() - reds)
}

/// Inclusive prefix values of `f`.
pub fn f_values(colors: &[Color], k: usize) -> Vec<i64> {
    let mut f = 0i64;
    colors
        .iter()
        .map(|c| {
            f += if c.is_blue() { k as i64 } else { -1 };
            f
        })
        .collect()
}

fn check_blue_ends(colors: &[Color]) -> Result<()> {
    match (colors.first(), colors.last()) {
        (Some(Color::Blue), Some(Color::Blue)) if colors.len() >= 2 => Ok(()),
        _ => Err(precondition("blue scan needs blue first and last items")),
    }
}

/// Run of `len` reds right after the last zero of `f` (weight `k`).
fn blue_run(colors: &[Color], k: usize, len: usize) -> Result<BlueScan> {
    let f = f_values(colors, k);
    let v = f
        .iter()
        .rposition(|&x| x == 0)
        .ok_or_else(|| broken("f never vanishes"))?;
    let start = v + 1;
    if start + len > colors.len() || colors[start..start + len].iter().any(|c| c.is_blue()) {
        return Err(broken("run after the last zero is not all red"));
    }
    Ok(BlueScan { start, len })
}

/// Around a blue pivot with `k(|B|-1) < |R| <= k|B|`: the run of
/// `alpha = |R| - k(|B|-1)` reds.
pub fn scan_blue(colors: &[Color], k: usize) -> Result<BlueScan> {
    check_blue_ends(colors)?;
    let (nr, blues) = count(colors);
    let nb = blues + 1;
    if k < 2 || nr <= k * (nb - 1) || nr > k * nb {
        return Err(precondition(format!(
            "blue scan needs k(|B|-1) < |R| <= k|B|, got |R|={nr}, |B|={nb}, k={k}"
        )));
    }
    blue_run(colors, k, nr - k * (nb - 1))
}

/// Around a blue pivot with `|R| = k'|B| + 1`: the run of `k' + 1` reds.
pub fn scan_blue_k1(colors: &[Color], k_prime: usize) -> Result<BlueScan> {
    check_blue_ends(colors)?;
    let (nr, blues) = count(colors);
    let nb = blues + 1;
    if k_prime < 2 || nr != k_prime * nb + 1 {
        return Err(precondition(format!(
            "k' scan needs |R| = k'|B| + 1, got |R|={nr}, |B|={nb}, k'={k_prime}"
        )));
    }
    blue_run(colors, k_prime, k_prime + 1)
}

/// Around a red pivot with `|R| = k|B| + 1`.
pub fn scan_red(colors: &[Color], k: usize) -> Result<RedScan> {
    match (colors.first(), colors.last()) {
        (Some(Color::Red), Some(Color::Red)) if colors.len() >= 2 => {}
        _ => return Err(precondition("red scan needs red first and last items")),
    }
    let (reds, nb) = count(colors);
    let nr = reds + 1;
    if k < 2 || nb < 1 || nr != k * nb + 1 {
        return Err(precondition(format!(
            "red scan needs |R| = k|B| + 1, got |R|={nr}, |B|={nb}, k={k}"
        )));
    }
    let f = f_values(colors, k);
    let n = colors.len();
    let b = (1..n - 1)
        .rev()
        .find(|&i| f[i] >= 0 && f[i - 1] < 0)
        .ok_or_else(|| broken("no sign change of f"))?;
    if colors[b].is_red() || f[b] >= k as i64 {
        return Err(broken("split point has the wrong color or value"));
    }
    if f[b] > 0 {
        Ok(RedScan::Case1 {
            b,
            alpha: f[b] as usize,
        })
    } else {
        if colors[b + 1].is_red() {
            return Err(broken("successor of the split point is red"));
        }
        Ok(RedScan::Case2 { b, b_prime: b + 1 })
    }
}

/// Red and blue ids of the two parts of a split.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Parts {
    pub r1: Vec<PointId>,
    pub b1: Vec<PointId>,
    pub r2: Vec<PointId>,
    pub b2: Vec<PointId>,
}

impl Parts {
    fn from_ranges(
        seq: &RadialSequence,
        first: impl Iterator<Item = usize>,
        second: impl Iterator<Item = usize>,
    ) -> Parts {
        let mut parts = Parts::default();
        for i in first {
            let (id, c) = seq.items[i];
            if c.is_red() {
                &mut parts.r1
            } else {
                &mut parts.b1
            }
            .push(id);
        }
        for i in second {
            let (id, c) = seq.items[i];
            if c.is_red() {
                &mut parts.r2
            } else {
                &mut parts.b2
            }
            .push(id);
        }
        parts
    }

    pub fn first(&self) -> Vec<PointId> {
        self.r1.iter().chain(&self.b1).copied().collect()
    }

    pub fn second(&self) -> Vec<PointId> {
        self.r2.iter().chain(&self.b2).copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlueSplit {
    pub run: Vec<PointId>,
    pub alpha: usize,
    pub parts: Parts,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RedSplit {
    Case1 {
        b: PointId,
        alpha: usize,
        parts: Parts,
    },
    Case2 {
        b: PointId,
        b_prime: PointId,
        parts: Parts,
    },
}

impl RedSplit {
    pub fn parts(&self) -> &Parts {
        match self {
            RedSplit::Case1 { parts, .. } | RedSplit::Case2 { parts, .. } => parts,
        }
    }
}

fn blue_split(seq: &RadialSequence, scan: BlueScan) -> BlueSplit {
    let n = seq.items.len();
    BlueSplit {
        run: scan.run().map(|i| seq.items[i].0).collect(),
        alpha: scan.len,
        parts: Parts::from_ranges(seq, scan.first_part(), scan.second_part(n)),
    }
}

/// [`scan_blue`] on a radial sequence around a blue pivot.
pub fn scan_blue_split(seq: &RadialSequence, k: usize) -> Result<BlueSplit> {
    Ok(blue_split(seq, scan_blue(&seq.colors(), k)?))
}

/// [`scan_blue_k1`] on a radial sequence around a blue pivot.
pub fn scan_blue_split_k1(seq: &RadialSequence, k_prime: usize) -> Result<BlueSplit> {
    Ok(blue_split(seq, scan_blue_k1(&seq.colors(), k_prime)?))
}

/// [`scan_red`] on a radial sequence around a red pivot.
pub fn scan_red_split(seq: &RadialSequence, k: usize) -> Result<RedSplit> {
    let scan = scan_red(&seq.colors(), k)?;
    let n = seq.items.len();
    let parts = Parts::from_ranges(seq, scan.first_part(), scan.second_part(n));
    Ok(match scan {
        RedScan::Case1 { b, alpha } => RedSplit::Case1 {
            b: seq.items[b].0,
            alpha,
            parts,
        },
        RedScan::Case2 { b, b_prime } => RedSplit::Case2 {
            b: seq.items[b].0,
            b_prime: seq.items[b_prime].0,
            parts,
        },
    })
}

/// The two parts as point sets; the pivot belongs to neither.
pub fn realize_split(ps: &PointSet, pivot: PointId, parts: &Parts) -> Result<(PointSet, PointSet)> {
    let (first, second) = (parts.first(), parts.second());
    if first.contains(&pivot) || second.contains(&pivot) {
        return Err(precondition("pivot listed in a part"));
    }
    Ok((ps.subset(&first)?, ps.subset(&second)?))
}
