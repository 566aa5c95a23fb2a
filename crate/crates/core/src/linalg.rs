//! Dense exact linear algebra: Gauss–Jordan elimination, kernels, and
//! canonical subspaces.
//!
//! A [`Subspace`] is always stored as a reduced row-echelon basis with
//! strictly increasing pivot columns and no zero rows. That form is unique
//! per subspace, so structural equality of the basis matrices is equality of
//! subspaces and enumerations are duplicate-free by construction.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;

/// A dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Mat {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F::Elem {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn transposed(&self) -> Self {
        let mut t = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                t.push(self.at(r, c).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data: t,
        }
    }

    pub fn matmul(&self, field: &F, other: &Mat<F>) -> Result<Mat<F>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Mat::zero(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = field.mul(a, other.at(k, j));
                    let cur = field.add(out.at(i, j), &prod);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    /// In-place Gauss–Jordan reduction to reduced row-echelon form.
    /// Returns the pivot columns in increasing order.
    pub fn rref(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !field.is_zero(self.at(r, col)))
            else {
                continue;
            };
            if src != pivot_row {
                for c in 0..self.cols {
                    self.data
                        .swap(src * self.cols + c, pivot_row * self.cols + c);
                }
            }
            let inv = field
                .inv(self.at(pivot_row, col))
                .expect("pivot is nonzero");
            for c in col..self.cols {
                let v = field.mul(self.at(pivot_row, c), &inv);
                *self.at_mut(pivot_row, c) = v;
            }
            for r in 0..self.rows {
                if r == pivot_row || field.is_zero(self.at(r, col)) {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let delta = field.mul(&factor, self.at(pivot_row, c));
                    let v = field.sub(self.at(r, c), &delta);
                    *self.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &F) -> usize {
        let mut m = self.clone();
        m.rref(field).len()
    }

    /// Canonical basis of the right kernel `{x : self · xᵀ = 0}`, one basis
    /// vector per row, in reduced row-echelon form.
    pub fn kernel(&self, field: &F) -> Mat<F> {
        let mut reduced = self.clone();
        let pivots = reduced.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zero(field, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            *basis.at_mut(i, fc) = field.one();
            for (prow, &pc) in pivots.iter().enumerate() {
                *basis.at_mut(i, pc) = field.neg(reduced.at(prow, fc));
            }
        }
        basis.rref(field);
        basis
    }

    /// Kernel of the transpose: `{x : x · self = 0}`.
    pub fn left_kernel(&self, field: &F) -> Mat<F> {
        self.transposed().kernel(field)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self, field: &F) -> Option<Mat<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zero(field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = field.one();
        }
        let pivots = aug.rref(field);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Mat::zero(field, n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Some(inv)
    }

    fn is_zero_row(&self, field: &F, r: usize) -> bool {
        self.row(r).iter().all(|e| field.is_zero(e))
    }
}

/// A linear subspace in canonical form: a reduced row-echelon basis matrix
/// whose rows span the space. Equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Mat<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Canonicalize the row span of `mat` (zero rows are dropped).
    pub fn from_span(field: &F, mut mat: Mat<F>) -> Self {
        let ambient = mat.cols();
        let pivots = mat.rref(field);
        let dim = pivots.len();
        let mut data = Vec::with_capacity(dim * ambient);
        for r in 0..dim {
            debug_assert!(!mat.is_zero_row(field, r));
            data.extend_from_slice(mat.row(r));
        }
        Subspace {
            ambient,
            basis: Mat {
                rows: dim,
                cols: ambient,
                data,
            },
            pivots,
        }
    }

    /// Build directly from a matrix already known to be in reduced
    /// row-echelon form with the given pivots (used by enumerations that
    /// construct canonical matrices cell by cell).
    pub(crate) fn from_rref_unchecked(basis: Mat<F>, pivots: Vec<usize>) -> Self {
        Subspace {
            ambient: basis.cols(),
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat {
                rows: 0,
                cols: ambient,
                data: Vec::new(),
            },
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Mat<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the basis and test whether it lands in the span.
    pub fn contains_vector(&self, field: &F, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let mut work = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if field.is_zero(&work[p]) {
                continue;
            }
            let factor = work[p].clone();
            for (c, w) in work.iter_mut().enumerate() {
                let delta = field.mul(&factor, self.basis.at(row, c));
                *w = field.sub(w, &delta);
            }
        }
        Ok(work.iter().all(|e| field.is_zero(e)))
    }

    pub fn contains(&self, field: &F, other: &Subspace<F>) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        for r in 0..other.dim() {
            if !self.contains_vector(field, other.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orthogonal complement under the standard dot pairing of coordinates:
    /// the kernel of the basis matrix.
    pub fn orthogonal_complement(&self, field: &F) -> Subspace<F> {
        if self.dim() == 0 {
            return Subspace::full(field, self.ambient);
        }
        let k = self.basis.kernel(field);
        Subspace::from_span(field, k)
    }

    pub fn sum(&self, field: &F, other: &Subspace<F>) -> Result<Subspace<F>> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for r in 0..self.dim() {
            rows.push(self.basis.row(r).to_vec());
        }
        for r in 0..other.dim() {
            rows.push(other.basis.row(r).to_vec());
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(self.ambient));
        }
        Ok(Subspace::from_span(field, Mat::from_rows(rows)?))
    }

    /// Intersection of row spans, via the left kernel of the stacked basis.
    pub fn intersect(&self, field: &F, other: &Subspace<F>) -> Result<Subspace<F>> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let mut stacked = Mat::zero(field, a + b, self.ambient);
        for r in 0..a {
            for c in 0..self.ambient {
                *stacked.at_mut(r, c) = self.basis.at(r, c).clone();
            }
        }
        for r in 0..b {
            for c in 0..self.ambient {
                *stacked.at_mut(a + r, c) = other.basis.at(r, c).clone();
            }
        }
        // Rows (u | w) of the left kernel satisfy u·A = −w·B, so u·A runs
        // over a spanning set of A ∩ B.
        let lk = stacked.left_kernel(field);
        let mut rows = Vec::new();
        for kr in 0..lk.rows() {
            let mut v = vec![field.zero(); self.ambient];
            for r in 0..a {
                let coef = lk.at(kr, r);
                if field.is_zero(coef) {
                    continue;
                }
                for (c, vc) in v.iter_mut().enumerate() {
                    let delta = field.mul(coef, self.basis.at(r, c));
                    *vc = field.add(vc, &delta);
                }
            }
            rows.push(v);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(self.ambient));
        }
        Ok(Subspace::from_span(field, Mat::from_rows(rows)?))
    }

    /// Image of the subspace under the linear map with matrix `g`
    /// (columns of `g` are the images of the coordinate vectors).
    pub fn apply_linear(&self, field: &F, g: &Mat<F>) -> Result<Subspace<F>> {
        if g.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: g.cols(),
            });
        }
        if self.dim() == 0 {
            return Ok(Subspace::zero(g.rows()));
        }
        let image = self.basis.matmul(field, &g.transposed())?;
        Ok(Subspace::from_span(field, image))
    }

    /// Extend the basis to a basis of the ambient space by appending the
    /// standard vectors of the non-pivot coordinates; the result is square
    /// and invertible, with the subspace basis as its first `dim` rows.
    pub fn extend_to_basis(&self, field: &F) -> Mat<F> {
        let n = self.ambient;
        let mut out = Mat::zero(field, n, n);
        for r in 0..self.dim() {
            for c in 0..n {
                *out.at_mut(r, c) = self.basis.at(r, c).clone();
            }
        }
        let mut next = self.dim();
        for c in 0..n {
            if !self.pivots.contains(&c) {
                *out.at_mut(next, c) = field.one();
                next += 1;
            }
        }
        debug_assert_eq!(next, n);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn rat(v: i64) -> BigRational {
        use crate::field::Field;
        Rationals.from_i64(v)
    }

    #[test]
    fn rref_and_rank() {
        let q = Rationals;
        let mut m = Mat::from_rows(vec![
            vec![rat(2), rat(4), rat(2)],
            vec![rat(1), rat(2), rat(3)],
        ])
        .unwrap();
        let pivots = m.rref(&q);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(*m.at(0, 0), rat(1));
        assert_eq!(*m.at(0, 1), rat(2));
        assert_eq!(*m.at(0, 2), rat(0));
        assert_eq!(*m.at(1, 2), rat(1));
    }

    #[test]
    fn kernel_is_orthogonal_to_rows() {
        let f5 = PrimeField::new(5).unwrap();
        let m = Mat::<PrimeField>::from_rows(vec![vec![1, 2, 3, 4], vec![0, 1, 1, 0]]).unwrap();
        let k = m.kernel(&f5);
        assert_eq!(k.rows(), 2);
        for kr in 0..k.rows() {
            for mr in 0..m.rows() {
                let mut dot = 0;
                for c in 0..4 {
                    dot = f5.add(&dot, &f5.mul(m.at(mr, c), k.at(kr, c)));
                }
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let q = Rationals;
        let m = Mat::from_rows(vec![
            vec![rat(1), rat(2)],
            vec![rat(3), rat(5)],
        ])
        .unwrap();
        let inv = m.inverse(&q).unwrap();
        let prod = m.matmul(&q, &inv).unwrap();
        assert_eq!(prod, Mat::identity(&q, 2));
        let singular = Mat::from_rows(vec![
            vec![rat(1), rat(2)],
            vec![rat(2), rat(4)],
        ])
        .unwrap();
        assert!(singular.inverse(&q).is_none());
    }

    #[test]
    fn subspace_canonical_equality() {
        let q = Rationals;
        let a = Subspace::from_span(
            &q,
            Mat::from_rows(vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(0), rat(2)]]).unwrap(),
        );
        let b = Subspace::from_span(
            &q,
            Mat::from_rows(vec![vec![rat(3), rat(3), rat(7)], vec![rat(1), rat(1), rat(1)]]).unwrap(),
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn complement_dimensions_and_duality() {
        let f7 = PrimeField::new(7).unwrap();
        let s = Subspace::from_span(
            &f7,
            Mat::<PrimeField>::from_rows(vec![vec![1, 2, 3, 4]]).unwrap(),
        );
        let c = s.orthogonal_complement(&f7);
        assert_eq!(c.dim(), 3);
        assert_eq!(c.orthogonal_complement(&f7), s);
        assert_eq!(Subspace::<PrimeField>::zero(4).orthogonal_complement(&f7).dim(), 4);
    }

    #[test]
    fn sum_and_intersection() {
        let f3 = PrimeField::new(3).unwrap();
        let a = Subspace::from_span(
            &f3,
            Mat::<PrimeField>::from_rows(vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap(),
        );
        let b = Subspace::from_span(
            &f3,
            Mat::<PrimeField>::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap(),
        );
        let meet = a.intersect(&f3, &b).unwrap();
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains_vector(&f3, &[0, 1, 0]).unwrap());
        let join = a.sum(&f3, &b).unwrap();
        assert_eq!(join.dim(), 3);
    }

    #[test]
    fn extend_to_basis_is_invertible() {
        let q = Rationals;
        let s = Subspace::from_span(
            &q,
            Mat::from_rows(vec![vec![rat(0), rat(1), rat(5)]]).unwrap(),
        );
        let b = s.extend_to_basis(&q);
        assert!(b.inverse(&q).is_some());
        assert_eq!(b.row(0), s.basis().row(0));
    }
}
