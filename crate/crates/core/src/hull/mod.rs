//! The hull of the Iwatsuka field as a two-letter subshift, examined at finite resolution.
//!
//! Every non-constant hull point is a half-plane pattern `[x_n > t]` or `[x_n >= t]`.
//! On `[-M, M]^2` such a pattern only depends on where `t` falls among the window's
//! `x`-values, so thresholds are labelled by a lattice site `m` with `t = x_m`.

mod measure;

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

pub use measure::{bulk_measure, interface_measure_weight, MeasureKind, MeasureNormalization, MeasureWeights};

use crate::model::{LatticeWindow, Side, Site, Slope};
use crate::Result;

/// A symbolic hull point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HullPoint {
    Plus,
    Minus,
    /// `[x_n > x_at]`, or `[x_n >= x_at]` when `closed`.
    Threshold { at: Site, closed: bool },
}

impl HullPoint {
    pub fn threshold(at: Site, closed: bool) -> Self {
        HullPoint::Threshold { at, closed }
    }

    /// The point generating the unperturbed field itself.
    pub fn origin() -> Self {
        HullPoint::Threshold { at: [0, 0], closed: false }
    }

    pub fn tag(&self, slope: &Slope, n: Site) -> Result<Side> {
        Ok(match *self {
            HullPoint::Plus => Side::Plus,
            HullPoint::Minus => Side::Minus,
            HullPoint::Threshold { at, closed } => match (slope.compare_x(n, at)?, closed) {
                (Ordering::Greater, _) | (Ordering::Equal, true) => Side::Plus,
                _ => Side::Minus,
            },
        })
    }
}

/// Restriction of a hull point to `[-M, M]^2`, indexed like [`LatticeWindow::square`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Pattern {
    pub half_width: i64,
    pub values: Vec<Side>,
}

impl Pattern {
    fn index(&self, n: Site) -> Option<usize> {
        let m = self.half_width;
        (n[0].abs() <= m && n[1].abs() <= m).then(|| ((n[0] + m) * (2 * m + 1) + (n[1] + m)) as usize)
    }

    pub fn get(&self, n: Site) -> Option<Side> {
        self.index(n).map(|i| self.values[i])
    }

    pub fn restrict(&self, m: i64) -> Pattern {
        assert!(m <= self.half_width);
        let window = LatticeWindow::square(m);
        Pattern { half_width: m, values: window.sites().iter().map(|&n| self.get(n).unwrap()).collect() }
    }

    /// `n -> self(n + gamma)` on `[-m, m]^2`; needs `m + |gamma|_inf <= half_width`.
    pub fn translate(&self, gamma: Site, m: i64) -> Pattern {
        let window = LatticeWindow::square(m);
        Pattern {
            half_width: m,
            values: window
                .sites()
                .iter()
                .map(|&n| self.get([n[0] + gamma[0], n[1] + gamma[1]]).expect("translate leaves the pattern"))
                .collect(),
        }
    }
}

pub fn point_pattern(point: &HullPoint, slope: &Slope, m: i64) -> Result<Pattern> {
    let window = LatticeWindow::square(m);
    let values = window.sites().iter().map(|&n| point.tag(slope, n)).collect::<Result<_>>()?;
    Ok(Pattern { half_width: m, values })
}

/// Pattern shift `n -> omega(n + gamma)`: thresholds move from `x` to `x - x_gamma`.
pub fn shift_point(point: &HullPoint, gamma: Site) -> HullPoint {
    match *point {
        HullPoint::Threshold { at, closed } => HullPoint::Threshold { at: [at[0] - gamma[0], at[1] - gamma[1]], closed },
        constant => constant,
    }
}

pub fn pi_map(point: &HullPoint, slope: &Slope) -> f64 {
    match point {
        HullPoint::Plus => f64::INFINITY,
        HullPoint::Minus => f64::NEG_INFINITY,
        HullPoint::Threshold { at, .. } => slope.x_value(*at),
    }
}

/// Bounds `(lower, upper)` on `sum_i s_i / 2^(i+1)`, with `s_i = 1` iff the patterns differ on `[-i, i]^2`.
pub fn hull_metric(p1: &HullPoint, p2: &HullPoint, slope: &Slope, depth: u32) -> Result<(f64, f64)> {
    let a = point_pattern(p1, slope, depth as i64)?;
    let b = point_pattern(p2, slope, depth as i64)?;
    let window = LatticeWindow::square(depth as i64);
    // s_i is monotone in i: it switches on at the smallest radius carrying a difference
    let first = window
        .sites()
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .filter(|(_, (x, y))| x != y)
        .map(|(n, _)| n[0].abs().max(n[1].abs()) as u32)
        .min();
    let tail = 0.5f64.powi(depth as i32 + 1);
    let lower = match first {
        // sum_{i=k}^{depth} 2^-(i+1)
        Some(k) => 0.5f64.powi(k as i32) - tail,
        None => 0.0,
    };
    Ok((lower, lower + tail))
}

/// Window sites grouped by equal `x`-value, groups in increasing order.
pub fn sorted_levels(slope: &Slope, m: i64) -> Result<Vec<Vec<Site>>> {
    let mut sites: Vec<Site> = LatticeWindow::square(m).sites().to_vec();
    sites.sort_by(|a, b| slope.x_value(*a).total_cmp(&slope.x_value(*b)));
    // exact insertion pass over the nearly sorted order
    for i in 1..sites.len() {
        let mut j = i;
        while j > 0 && slope.compare_x(sites[j - 1], sites[j])? == Ordering::Greater {
            sites.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut levels: Vec<Vec<Site>> = Vec::new();
    for n in sites {
        match levels.last_mut() {
            Some(level) if slope.compare_x(level[0], n)? == Ordering::Equal => level.push(n),
            _ => levels.push(vec![n]),
        }
    }
    Ok(levels)
}

fn rank_pattern(ranks: &[usize], m: i64, plus_from: usize) -> Pattern {
    Pattern {
        half_width: m,
        values: ranks.iter().map(|&r| if r >= plus_from { Side::Plus } else { Side::Minus }).collect(),
    }
}

/// Distinct restrictions of hull points to `[-M, M]^2`.
#[derive(Clone, Debug, Serialize)]
pub struct HullEnumeration {
    pub half_width: i64,
    pub patterns: Vec<Pattern>,
    /// One generating point per pattern.
    pub points: Vec<HullPoint>,
}

impl HullEnumeration {
    pub fn count(&self) -> usize {
        self.patterns.len()
    }
}

pub fn enumerate_hull(slope: &Slope, m: i64) -> Result<HullEnumeration> {
    let levels = sorted_levels(slope, m)?;
    let window = LatticeWindow::square(m);
    let mut ranks = vec![0; window.len()];
    for (k, level) in levels.iter().enumerate() {
        for &n in level {
            ranks[window.index(n).unwrap()] = k;
        }
    }
    let mut candidates = vec![(HullPoint::Plus, 0), (HullPoint::Minus, levels.len())];
    for (k, level) in levels.iter().enumerate() {
        candidates.push((HullPoint::threshold(level[0], false), k + 1));
        candidates.push((HullPoint::threshold(level[0], true), k));
    }
    let mut seen = HashSet::new();
    let mut out = HullEnumeration { half_width: m, patterns: Vec::new(), points: Vec::new() };
    for (point, plus_from) in candidates {
        let pattern = rank_pattern(&ranks, m, plus_from);
        if seen.insert(pattern.clone()) {
            out.points.push(point);
            out.patterns.push(pattern);
        }
    }
    Ok(out)
}

/// Radius at which non-isolation of `M`-patterns is tested.
///
/// Splitting every gap between window values needs sites out to the next continued-fraction
/// denominators; for sqrt(2) the smallest sufficient radius stays below `6M + 6`.
pub const fn refinement_radius(m: i64) -> i64 {
    6 * m + 6
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CantorRow {
    #[serde(rename = "M")]
    pub m: i64,
    pub pattern_count: usize,
    pub min_threshold_gap: f64,
    pub all_points_non_isolated: bool,
}

fn min_gap(slope: &Slope, levels: &[Vec<Site>]) -> f64 {
    if let Some((p, q)) = slope.as_rational() {
        let scale = q.max(1);
        let key = |n: Site| if q == 0 { -p * n[0] } else { -p * n[0] + q * n[1] };
        return levels
            .windows(2)
            .map(|w| key(w[1][0]) - key(w[0][0]))
            .min()
            .map_or(f64::INFINITY, |d| d as f64 / scale as f64);
    }
    levels
        .windows(2)
        .map(|w| slope.x_value(w[1][0]) - slope.x_value(w[0][0]))
        .fold(f64::INFINITY, f64::min)
}

/// For each `M`-pattern, the number of distinct `R`-patterns restricting to it.
///
/// Hull patterns on a window are `[rank >= J]` over the window's sorted levels, so the
/// restriction of the `R`-pattern `J` is the `M`-pattern counting the `M`-levels ranked below `J`.
pub fn extension_counts(slope: &Slope, m: i64, r: i64) -> Result<Vec<usize>> {
    assert!(r >= m);
    let coarse = sorted_levels(slope, m)?;
    let fine = sorted_levels(slope, r)?;
    let window = LatticeWindow::square(m);
    let mut is_coarse = vec![false; fine.len()];
    for (j, level) in fine.iter().enumerate() {
        is_coarse[j] = level.iter().any(|&n| window.contains(n));
    }
    let mut counts = vec![0; coarse.len() + 1];
    let mut below = 0;
    for (big_j, coarse_level) in is_coarse.iter().chain(std::iter::once(&false)).enumerate() {
        counts[below] += 1;
        if big_j < fine.len() && *coarse_level {
            below += 1;
        }
    }
    Ok(counts)
}

/// Pattern counts, threshold gaps and finite-resolution non-isolation for each `M`.
///
/// An `M`-pattern counts as non-isolated when at least two distinct hull patterns on
/// `[-R, R]^2`, `R = refinement_radius(M)`, restrict to it.
pub fn cantor_diagnostics(slope: &Slope, ms: &[i64]) -> Result<Vec<CantorRow>> {
    ms.iter()
        .map(|&m| {
            let levels = sorted_levels(slope, m)?;
            let counts = extension_counts(slope, m, refinement_radius(m))?;
            Ok(CantorRow {
                m,
                pattern_count: levels.len() + 1,
                min_threshold_gap: min_gap(slope, &levels),
                all_points_non_isolated: counts.iter().all(|&c| c >= 2),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Slope {
        Slope::rational(1, 2).unwrap()
    }

    #[test]
    fn pattern_examples() {
        let p = point_pattern(&HullPoint::Plus, &Slope::sqrt(3).unwrap(), 2).unwrap();
        assert!(p.values.iter().all(|&t| t == Side::Plus));
        let closed = point_pattern(&HullPoint::threshold([0, 0], true), &half(), 1).unwrap();
        assert_eq!(closed.get([0, 0]), Some(Side::Plus));
        let open = point_pattern(&HullPoint::origin(), &half(), 1).unwrap();
        assert_eq!(open.get([0, 0]), Some(Side::Minus));
    }

    #[test]
    fn shift_examples() {
        let moved = shift_point(&HullPoint::origin(), [0, 1]);
        assert_eq!(moved, HullPoint::threshold([0, -1], false));
        assert_eq!(pi_map(&moved, &half()), -1.0);
        assert_eq!(shift_point(&HullPoint::Plus, [4, -1]), HullPoint::Plus);
        let big = point_pattern(&HullPoint::origin(), &half(), 4).unwrap();
        assert_eq!(point_pattern(&moved, &half(), 3).unwrap(), big.translate([0, 1], 3));
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi_map(&HullPoint::Plus, &half()), f64::INFINITY);
        assert_eq!(pi_map(&HullPoint::threshold([-1, 0], false), &half()), 0.5);
    }

    #[test]
    fn metric_examples() {
        let s = half();
        let (lo, hi) = hull_metric(&HullPoint::Plus, &HullPoint::Minus, &s, 10).unwrap();
        assert_eq!(lo, 1.0 - 0.5f64.powi(11));
        assert_eq!(hi, 1.0);
        let (lo, hi) = hull_metric(&HullPoint::origin(), &HullPoint::origin(), &s, 10).unwrap();
        assert_eq!((lo, hi), (0.0, 0.5f64.powi(11)));
        let (lo, _) = hull_metric(&HullPoint::origin(), &HullPoint::threshold([0, 0], true), &s, 10).unwrap();
        assert!(lo > 0.0);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_hull(&Slope::zero(), 1).unwrap().count(), 4);
        assert_eq!(enumerate_hull(&Slope::PlusInfinity, 0).unwrap().count(), 2);
        assert_eq!(enumerate_hull(&Slope::sqrt(2).unwrap(), 0).unwrap().count(), 2);
        assert!(enumerate_hull(&Slope::sqrt(2).unwrap(), 1).unwrap().count() > 4);
    }

    #[test]
    fn rational_gap_is_one_over_q() {
        for row in cantor_diagnostics(&half(), &[1, 2, 3]).unwrap() {
            assert_eq!(row.min_threshold_gap, 0.5);
            assert!(!row.all_points_non_isolated);
        }
    }
}
