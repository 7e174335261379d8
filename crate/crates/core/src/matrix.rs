//! Exact dense matrices over [`Scalar`].
//!
//! Determinants use fraction-free (Bareiss) elimination so intermediate
//! coefficients stay controlled; inverses and kernels use exact Gauss-Jordan
//! reduction. Nullspace bases follow a fixed echelon convention: free columns
//! in ascending order, each basis vector rescaled so its first nonzero entry
//! is 1. That makes every derived object downstream reproducible.

use std::fmt;

use crate::error::LinalgError;
use crate::scalar::Scalar;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    /// Builds from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::RaggedRows);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// True when `self == k * I` for some scalar `k` (square matrices only).
    pub fn scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let k = self.at(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { k.clone() } else { Scalar::zero() };
                if *self.at(i, j) != expect {
                    return None;
                }
            }
        }
        Some(k)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch);
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j) + other.at(i, j)
        }))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch);
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j) - other.at(i, j)
        }))
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * k)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch);
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    *out.at_mut(i, j) += &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::ShapeMismatch);
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for i in 0..self.rows {
            for (j, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                let prod = a * x;
                out[i] += &prod;
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free Gaussian elimination with row
    /// pivoting (Bareiss).
    pub fn det(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = Scalar::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.at(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = !sign;
                    }
                    None => return Ok(Scalar::zero()),
                }
            }
            let pivot = m.at(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * &pivot - m.at(i, k) * m.at(k, j);
                    *m.at_mut(i, j) = &num / &prev;
                }
                *m.at_mut(i, k) = Scalar::zero();
            }
            prev = pivot;
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if sign { -d } else { d })
    }

    /// Exact inverse by Gauss-Jordan on the augmented identity.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(LinalgError::Singular)?;
            a.swap_rows(col, pivot_row);
            inv.swap_rows(col, pivot_row);
            let pivot = a.at(col, col).clone();
            a.scale_row(col, &pivot.recip());
            inv.scale_row(col, &pivot.recip());
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                a.row_sub_scaled(r, col, &factor);
                inv.row_sub_scaled(r, col, &factor);
            }
        }
        Ok(inv)
    }

    /// Basis of the right kernel `{v : self v = 0}`.
    ///
    /// Free columns are taken in ascending order and each basis vector is
    /// rescaled so its first nonzero entry is 1. Empty when the kernel is {0}.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (rref, pivot_cols) = self.rref();
        let n = self.cols;
        let is_pivot: Vec<bool> = {
            let mut flags = vec![false; n];
            for &c in &pivot_cols {
                flags[c] = true;
            }
            flags
        };
        let mut basis = Vec::new();
        for fc in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); n];
            v[fc] = Scalar::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -rref.at(row, fc);
            }
            let lead = v
                .iter()
                .find(|x| !x.is_zero())
                .expect("kernel vector has a nonzero coordinate")
                .clone();
            for x in &mut v {
                *x = &*x / &lead;
            }
            basis.push(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row >= a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a.at(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let pivot = a.at(row, col).clone();
            a.scale_row(row, &pivot.recip());
            for r in 0..a.rows {
                if r == row || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                a.row_sub_scaled(r, row, &factor);
            }
            pivot_cols.push(col);
            row += 1;
        }
        (a, pivot_cols)
    }

    /// Solves `self x = b` exactly. Returns a particular solution (free
    /// variables set to zero) plus a kernel basis, or `None` if inconsistent.
    pub fn solve_affine(&self, b: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
        assert_eq!(self.rows, b.len(), "rhs length mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(row, self.cols).clone();
        }
        Some((x, self.nullspace()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, k: &Scalar) {
        for j in 0..self.cols {
            let v = self.at(r, j) * k;
            *self.at_mut(r, j) = v;
        }
    }

    /// row r -= factor * row src
    fn row_sub_scaled(&mut self, r: usize, src: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let delta = factor * self.at(src, j);
            let v = self.at(r, j) - &delta;
            *self.at_mut(r, j) = v;
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_canonical_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dot product of two equal-length scalar slices.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let prod = x * y;
        acc += &prod;
    }
    acc
}

/// `a + k*b` componentwise.
pub fn axpy(a: &[Scalar], k: &Scalar, b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + &(k * y)).collect()
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Parses a JSON array of row arrays of scalar strings.
pub fn matrix_from_json(value: &serde_json::Value) -> Result<Matrix, LinalgError> {
    let rows: Vec<Vec<Scalar>> = serde_json::from_value(value.clone())
        .map_err(|e| LinalgError::BadMatrixJson(e.to_string()))?;
    Matrix::from_rows(rows)
}

pub fn matrix_to_json(m: &Matrix) -> serde_json::Value {
    serde_json::to_value(m.to_row_vecs()).expect("matrix serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_identity_is_one() {
        assert_eq!(Matrix::identity(3).det().unwrap(), Scalar::one());
    }

    #[test]
    fn det_permutation_is_minus_one() {
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det().unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn det_odd_antisymmetric_vanishes() {
        // 3x3 antisymmetric matrix built from a moment vector (mu3, -mu2, mu1
        // as the off-diagonal entries); singular for every choice of mu.
        // Oracle: symbolic cofactor expansion, checked in sympoly tests.
        for (a, b, c) in [(1i64, 2, 3), (-5, 7, 11), (0, 4, -9)] {
            let m = Matrix::from_rows(vec![
                vec![Scalar::zero(), Scalar::from_int(c), Scalar::from_int(-b)],
                vec![Scalar::from_int(-c), Scalar::zero(), Scalar::from_int(a)],
                vec![Scalar::from_int(b), Scalar::from_int(-a), Scalar::zero()],
            ])
            .unwrap();
            assert!(m.det().unwrap().is_zero());
        }
    }

    #[test]
    fn det_rejects_non_square() {
        assert!(matches!(
            mat(&[&[1, 2, 3], &[4, 5, 6]]).det(),
            Err(LinalgError::NonSquare { .. })
        ));
    }

    #[test]
    fn inverse_identity_and_involution() {
        assert_eq!(Matrix::identity(4).inverse().unwrap(), Matrix::identity(4));
        let swap = mat(&[&[0, 1], &[1, 0]]);
        let inv = swap.inverse().unwrap();
        assert_eq!(inv, swap);
        assert_eq!(swap.mul(&inv).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn inverse_detects_singular() {
        assert!(matches!(
            mat(&[&[1, 2], &[2, 4]]).inverse(),
            Err(LinalgError::Singular)
        ));
    }

    #[test]
    fn nullspace_trivial_and_full() {
        assert!(Matrix::identity(2).nullspace().is_empty());
        let basis = Matrix::zeros(2, 2).nullspace();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], vec![Scalar::one(), Scalar::zero()]);
        assert_eq!(basis[1], vec![Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn nullspace_leading_one_convention() {
        // kernel of [1 1] is spanned by (-1, 1); rescaled to leading 1 it
        // becomes (1, -1).
        let basis = mat(&[&[1, 1]]).nullspace();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![Scalar::one(), Scalar::from_int(-1)]);
    }

    #[test]
    fn solve_affine_reports_inconsistency() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        let b = vec![Scalar::one(), Scalar::from_int(2)];
        assert!(a.solve_affine(&b).is_none());
        let b2 = vec![Scalar::one(), Scalar::one()];
        let (x, kernel) = a.solve_affine(&b2).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b2);
        assert_eq!(kernel.len(), 1);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn scalar_strategy() -> impl Strategy<Value = Scalar> {
            (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::new(n, d))
        }

        fn matrix_strategy(n: usize) -> impl Strategy<Value = Matrix> {
            proptest::collection::vec(scalar_strategy(), n * n).prop_map(move |entries| {
                Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone())
            })
        }

        proptest! {
            #[test]
            fn inverse_times_original_is_identity(m in matrix_strategy(4)) {
                if !m.det().unwrap().is_zero() {
                    let inv = m.inverse().unwrap();
                    prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(4));
                    prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(4));
                }
            }

            #[test]
            fn det_is_multiplicative(a in matrix_strategy(4), b in matrix_strategy(4)) {
                let lhs = a.mul(&b).unwrap().det().unwrap();
                let rhs = a.det().unwrap() * b.det().unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn bareiss_matches_gauss_jordan_rank(m in matrix_strategy(4)) {
                // det == 0 exactly when the rank drops
                let d = m.det().unwrap();
                prop_assert_eq!(d.is_zero(), m.rank() < 4);
            }

            #[test]
            fn nullspace_vectors_annihilate(m in matrix_strategy(4)) {
                let basis = m.nullspace();
                prop_assert_eq!(basis.len(), 4 - m.rank());
                for v in &basis {
                    prop_assert!(vec_is_zero(&m.mul_vec(v).unwrap()));
                }
            }
        }
    }
}
