//! Operators on a lattice window, stored dense (faer) or sparse (sprs CSR).

use std::sync::Arc;

use faer::Mat;
use num_complex::Complex64 as C64;
use sprs::{CsMat, TriMat};

use crate::model::LatticeWindow;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[derive(Clone, Debug)]
pub enum OpMatrix {
    Dense(Mat<C64>),
    Sparse(CsMat<C64>),
}

impl OpMatrix {
    pub fn dim(&self) -> usize {
        match self {
            OpMatrix::Dense(m) => m.nrows(),
            OpMatrix::Sparse(m) => m.rows(),
        }
    }

    pub fn from_triplets(dim: usize, entries: impl IntoIterator<Item = (usize, usize, C64)>) -> Self {
        let mut tri = TriMat::new((dim, dim));
        for (i, j, v) in entries {
            tri.add_triplet(i, j, v);
        }
        OpMatrix::Sparse(tri.to_csr())
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        match self {
            OpMatrix::Dense(m) => m[(i, j)],
            OpMatrix::Sparse(m) => m.get(i, j).copied().unwrap_or(ZERO),
        }
    }

    pub fn to_dense(&self) -> Mat<C64> {
        match self {
            OpMatrix::Dense(m) => m.clone(),
            OpMatrix::Sparse(s) => {
                let mut m = Mat::zeros(s.rows(), s.cols());
                for (v, (i, j)) in s.iter() {
                    m[(i, j)] += *v;
                }
                m
            }
        }
    }

    /// Visits every stored entry; dense storage skips exact zeros.
    pub fn for_each_nonzero(&self, mut f: impl FnMut(usize, usize, C64)) {
        match self {
            OpMatrix::Dense(m) => {
                for j in 0..m.ncols() {
                    for i in 0..m.nrows() {
                        let v = m[(i, j)];
                        if v != ZERO {
                            f(i, j, v);
                        }
                    }
                }
            }
            OpMatrix::Sparse(s) => {
                for (v, (i, j)) in s.iter() {
                    f(i, j, *v);
                }
            }
        }
    }

    /// Entrywise `(i, j, a_ij) -> f(i, j, a_ij)`, keeping the sparsity pattern.
    pub fn map_indexed(&self, f: impl Fn(usize, usize, C64) -> C64) -> Self {
        match self {
            OpMatrix::Dense(m) => OpMatrix::Dense(Mat::from_fn(m.nrows(), m.ncols(), |i, j| f(i, j, m[(i, j)]))),
            OpMatrix::Sparse(s) => {
                let mut out = s.clone();
                for (i, mut row) in out.outer_iterator_mut().enumerate() {
                    for (j, v) in row.iter_mut() {
                        *v = f(i, j, *v);
                    }
                }
                OpMatrix::Sparse(out)
            }
        }
    }

    pub fn adjoint(&self) -> Self {
        match self {
            OpMatrix::Dense(m) => OpMatrix::Dense(m.adjoint().to_owned()),
            OpMatrix::Sparse(s) => {
                OpMatrix::from_triplets(s.rows(), s.iter().map(|(v, (i, j))| (j, i, v.conj())))
            }
        }
    }

    pub fn mul(&self, other: &OpMatrix) -> Self {
        match (self, other) {
            (OpMatrix::Sparse(a), OpMatrix::Sparse(b)) => OpMatrix::Sparse(a * b),
            (OpMatrix::Dense(a), OpMatrix::Dense(b)) => OpMatrix::Dense(a * b),
            (OpMatrix::Sparse(a), OpMatrix::Dense(b)) => {
                let mut out = Mat::zeros(a.rows(), b.ncols());
                for (v, (i, k)) in a.iter() {
                    for j in 0..b.ncols() {
                        out[(i, j)] += *v * b[(k, j)];
                    }
                }
                OpMatrix::Dense(out)
            }
            (OpMatrix::Dense(a), OpMatrix::Sparse(b)) => {
                let mut out = Mat::zeros(a.nrows(), b.cols());
                for (v, (k, j)) in b.iter() {
                    for i in 0..a.nrows() {
                        out[(i, j)] += a[(i, k)] * *v;
                    }
                }
                OpMatrix::Dense(out)
            }
        }
    }

    pub fn add(&self, other: &OpMatrix) -> Self {
        self.combine(other, ONE)
    }

    pub fn sub(&self, other: &OpMatrix) -> Self {
        self.combine(other, -ONE)
    }

    /// `self + c * other`.
    fn combine(&self, other: &OpMatrix, c: C64) -> Self {
        match (self, other) {
            (OpMatrix::Sparse(a), OpMatrix::Sparse(b)) => OpMatrix::from_triplets(
                a.rows(),
                a.iter().map(|(v, (i, j))| (i, j, *v)).chain(b.iter().map(|(v, (i, j))| (i, j, c * *v))),
            ),
            _ => {
                let mut out = self.to_dense();
                other.for_each_nonzero(|i, j, v| out[(i, j)] += c * v);
                OpMatrix::Dense(out)
            }
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map_indexed(|_, _, v| c * v)
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        self.for_each_nonzero(|_, _, v| m = m.max(v.norm()));
        m
    }

    pub fn max_abs_diff(&self, other: &OpMatrix) -> f64 {
        self.sub(other).max_abs()
    }
}

/// A matrix over the sites of a window, with structural flags.
#[derive(Clone, Debug)]
pub struct LatticeOperator {
    pub window: Arc<LatticeWindow>,
    pub matrix: OpMatrix,
    pub hermitian: bool,
    pub unitary_on_interior: bool,
}

impl LatticeOperator {
    pub fn new(window: Arc<LatticeWindow>, matrix: OpMatrix) -> Self {
        assert_eq!(window.len(), matrix.dim(), "matrix does not match the window");
        Self { window, matrix, hermitian: false, unitary_on_interior: false }
    }

    pub fn zero(window: Arc<LatticeWindow>) -> Self {
        let n = window.len();
        let mut op = Self::new(window, OpMatrix::from_triplets(n, []));
        op.hermitian = true;
        op
    }

    pub fn identity(window: Arc<LatticeWindow>) -> Self {
        Self::diagonal(window, |_| ONE)
    }

    /// `diag(f(n))`, indexed by site.
    pub fn diagonal(window: Arc<LatticeWindow>, f: impl Fn(crate::model::Site) -> C64) -> Self {
        let entries: Vec<_> = window.sites().iter().enumerate().map(|(i, &n)| (i, i, f(n))).collect();
        let hermitian = entries.iter().all(|e| e.2.im == 0.0);
        let unitary = entries.iter().all(|e| (e.2.norm() - 1.0).abs() < 1e-12);
        let mut op = Self::new(window.clone(), OpMatrix::from_triplets(window.len(), entries));
        op.hermitian = hermitian;
        op.unitary_on_interior = unitary;
        op
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.matrix.get(i, j)
    }

    fn derived(&self, matrix: OpMatrix) -> Self {
        Self::new(self.window.clone(), matrix)
    }

    pub fn adjoint(&self) -> Self {
        let mut op = self.derived(self.matrix.adjoint());
        op.hermitian = self.hermitian;
        op.unitary_on_interior = self.unitary_on_interior;
        op
    }

    pub fn mul(&self, other: &LatticeOperator) -> Self {
        debug_assert!(Arc::ptr_eq(&self.window, &other.window) || *self.window == *other.window);
        let mut op = self.derived(self.matrix.mul(&other.matrix));
        op.unitary_on_interior = self.unitary_on_interior && other.unitary_on_interior;
        op
    }

    pub fn add(&self, other: &LatticeOperator) -> Self {
        let mut op = self.derived(self.matrix.add(&other.matrix));
        op.hermitian = self.hermitian && other.hermitian;
        op
    }

    pub fn sub(&self, other: &LatticeOperator) -> Self {
        let mut op = self.derived(self.matrix.sub(&other.matrix));
        op.hermitian = self.hermitian && other.hermitian;
        op
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut op = self.derived(self.matrix.scale(c));
        op.hermitian = self.hermitian && c.im == 0.0;
        op
    }

    pub fn to_dense(&self) -> Self {
        let mut op = self.clone();
        op.matrix = OpMatrix::Dense(self.matrix.to_dense());
        op
    }

    pub fn diag(&self) -> Vec<C64> {
        self.matrix.diag()
    }

    /// `max |A - A*|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.matrix.max_abs_diff(&self.matrix.adjoint())
    }

    pub fn max_abs_diff(&self, other: &LatticeOperator) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }

    /// Largest entry deviation of `self` from `other` over rows and columns of the given sites.
    pub fn max_abs_diff_on(&self, other: &LatticeOperator, keep: &[usize]) -> f64 {
        let mut mask = vec![false; self.dim()];
        for &i in keep {
            mask[i] = true;
        }
        let mut m: f64 = 0.0;
        self.matrix.sub(&other.matrix).for_each_nonzero(|i, j, v| {
            if mask[i] && mask[j] {
                m = m.max(v.norm());
            }
        });
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OpMatrix {
        OpMatrix::from_triplets(3, [(0, 1, C64::new(1.0, 2.0)), (2, 0, C64::new(-0.5, 0.0)), (1, 1, ONE)])
    }

    #[test]
    fn sparse_and_dense_agree() {
        let s = sample();
        let d = OpMatrix::Dense(s.to_dense());
        let ss = s.mul(&s.adjoint());
        let dd = d.mul(&d.adjoint());
        assert!(ss.max_abs_diff(&dd) < 1e-15);
        assert!(s.mul(&d).max_abs_diff(&dd.sub(&dd).add(&s.mul(&s))) < 1e-15);
        assert!(d.mul(&s).max_abs_diff(&ss.sub(&ss).add(&s.mul(&s))) < 1e-15);
        assert_eq!(s.adjoint().get(1, 0), C64::new(1.0, -2.0));
        assert_eq!(s.diag(), vec![ZERO, ONE, ZERO]);
    }
}
