//! Finite site sets with a fixed site-to-index bijection.

use super::{Site, Slope};

/// A finite set of lattice sites, ordered row-major by `(n1, n2)`.
///
/// Square windows `[-M, M]^2` are the default; slabs aligned with an interface
/// are used for per-length traces.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeWindow {
    sites: Vec<Site>,
    lo: Site,
    hi: Site,
    // dense bounding-box lookup, -1 where absent
    lookup: Vec<i32>,
    half_width: Option<i64>,
}

impl LatticeWindow {
    /// `[-M, M]^2`; index of `n` is `(n1 + M)(2M + 1) + (n2 + M)`.
    pub fn square(m: i64) -> Self {
        assert!(m >= 0, "half width must be nonnegative");
        let mut w = Self::from_predicate([-m, -m], [m, m], |_| true);
        w.half_width = Some(m);
        w
    }

    /// `[a1, b1] x [a2, b2]`.
    pub fn rectangle(lo: Site, hi: Site) -> Self {
        Self::from_predicate(lo, hi, |_| true)
    }

    /// Sites with `|v . n| <= half_tangential` and `|v_perp . n| <= half_normal`.
    pub fn slab(slope: &Slope, half_tangential: f64, half_normal: f64) -> Self {
        let reach = (half_tangential.hypot(half_normal)).ceil() as i64 + 1;
        Self::from_predicate([-reach, -reach], [reach, reach], |n| {
            slope.tangential(n).abs() <= half_tangential && slope.normal_distance(n).abs() <= half_normal
        })
    }

    fn from_predicate(lo: Site, hi: Site, keep: impl Fn(Site) -> bool) -> Self {
        let mut sites = Vec::new();
        for n1 in lo[0]..=hi[0] {
            for n2 in lo[1]..=hi[1] {
                if keep([n1, n2]) {
                    sites.push([n1, n2]);
                }
            }
        }
        let mut w = Self { sites, lo, hi, lookup: Vec::new(), half_width: None };
        w.shrink_box();
        w
    }

    fn shrink_box(&mut self) {
        if self.sites.is_empty() {
            self.lo = [0, 0];
            self.hi = [-1, -1];
            self.lookup.clear();
            return;
        }
        self.lo = [
            self.sites.iter().map(|n| n[0]).min().unwrap(),
            self.sites.iter().map(|n| n[1]).min().unwrap(),
        ];
        self.hi = [
            self.sites.iter().map(|n| n[0]).max().unwrap(),
            self.sites.iter().map(|n| n[1]).max().unwrap(),
        ];
        let width = (self.hi[1] - self.lo[1] + 1) as usize;
        let height = (self.hi[0] - self.lo[0] + 1) as usize;
        self.lookup = vec![-1; width * height];
        for (i, n) in self.sites.iter().enumerate() {
            let k = (n[0] - self.lo[0]) as usize * width + (n[1] - self.lo[1]) as usize;
            self.lookup[k] = i as i32;
        }
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn site(&self, index: usize) -> Site {
        self.sites[index]
    }

    /// `Some(M)` for square windows.
    pub fn half_width(&self) -> Option<i64> {
        self.half_width
    }

    pub fn index(&self, n: Site) -> Option<usize> {
        if n[0] < self.lo[0] || n[0] > self.hi[0] || n[1] < self.lo[1] || n[1] > self.hi[1] {
            return None;
        }
        let width = (self.hi[1] - self.lo[1] + 1) as usize;
        let k = (n[0] - self.lo[0]) as usize * width + (n[1] - self.lo[1]) as usize;
        let i = self.lookup[k];
        (i >= 0).then_some(i as usize)
    }

    pub fn contains(&self, n: Site) -> bool {
        self.index(n).is_some()
    }

    /// Whether the whole Chebyshev ball of radius `k` around `n` lies in the window.
    pub fn is_interior(&self, n: Site, k: i64) -> bool {
        if let Some(m) = self.half_width {
            return n[0].abs() <= m - k && n[1].abs() <= m - k;
        }
        (-k..=k).all(|a| (-k..=k).all(|b| self.contains([n[0] + a, n[1] + b])))
    }

    /// Indices of sites at Chebyshev distance at least `k` from the complement.
    pub fn interior(&self, k: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_interior(self.sites[i], k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_indexing() {
        let w = LatticeWindow::square(2);
        assert_eq!(w.len(), 25);
        for (i, &n) in w.sites().iter().enumerate() {
            assert_eq!(w.index(n), Some(i));
            assert_eq!(i as i64, (n[0] + 2) * 5 + (n[1] + 2));
        }
        assert_eq!(w.index([3, 0]), None);
        assert_eq!(w.interior(1).len(), 9);
        assert_eq!(w.interior(2).len(), 1);
    }

    #[test]
    fn slab_is_symmetric() {
        let s = Slope::rational(1, 2).unwrap();
        let w = LatticeWindow::slab(&s, 10.0, 4.0);
        for &n in w.sites() {
            assert!(w.contains([-n[0], -n[1]]));
            assert!(s.tangential(n).abs() <= 10.0);
        }
        let area = 20.0 * 8.0;
        assert!((w.len() as f64 - area).abs() < 0.2 * area);
    }

    #[test]
    fn general_interior_matches_square_rule() {
        let sq = LatticeWindow::square(4);
        let rect = LatticeWindow::rectangle([-4, -4], [4, 4]);
        assert_eq!(sq.interior(2), rect.interior(2));
    }
}
