//! Dense matrices over an exact field, with the row-reduction kernel that
//! every solver in the crate is built on.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use std::fmt;

/// A dense row-major matrix whose entries all share one [`FieldSpec`].
///
/// Dimensions here are desk-scale (algebras of dim ≤ ~16, constraint systems
/// of at most a few tens of thousands of rows), so there is no sparse or
/// blocked machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, field: FieldSpec) -> Result<Matrix> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row of length {} in a {cols}-column matrix",
                    row.len()
                )));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch(e.field().to_string(), field.to_string()));
                }
                entries.push(e);
            }
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: FieldSpec,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.field(), field, "entry field mismatch");
                entries.push(e);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| self.get(c, r).clone())
    }

    pub fn scaled(&self, k: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.get(r, c) * k)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c) + rhs.get(r, c)
        }))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c) - rhs.get(r, c)
        }))
    }

    fn check_same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols || self.field != rhs.field {
            return Err(Error::Shape(format!(
                "{}x{} over {} vs {}x{} over {}",
                self.rows, self.cols, self.field, rhs.rows, rhs.cols, rhs.field
            )));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows || self.field != rhs.field {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let zero = Scalar::zero(self.field);
        Ok(Matrix::from_fn(self.rows, rhs.cols, self.field, |r, c| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                acc = &acc + &(a * rhs.get(k, c));
            }
            acc
        }))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let zero = Scalar::zero(self.field);
        (0..self.rows)
            .map(|r| {
                let mut acc = zero.clone();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = &acc + &(a * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `rhs` below `self`.
    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.cols || self.field != rhs.field {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&rhs.entries);
        Ok(Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            field: self.field,
            entries,
        })
    }

    /// Places `rhs` to the right of `self`.
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.field != rhs.field {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, self.field, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        }))
    }

    /// Row-major flattening; the vectorized form used to canonicalize spaces
    /// of matrices.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn from_vectorized(v: &[Scalar], rows: usize, cols: usize, field: FieldSpec) -> Matrix {
        assert_eq!(v.len(), rows * cols, "vectorized length mismatch");
        Matrix {
            rows,
            cols,
            field,
            entries: v.to_vec(),
        }
    }

    /// Reduced row-echelon form with pivot columns and rank. Deterministic:
    /// the pivot is always the first nonzero entry scanning down each column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.get(pivot_row, col).inverse().expect("nonzero pivot");
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.row_axpy(r, pivot_row, &factor);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            rank: pivots.len(),
            pivots,
            matrix: m,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) * k;
            self.set(r, c, v);
        }
    }

    // row r -= factor * row src
    fn row_axpy(&mut self, r: usize, src: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) - &(factor * self.get(src, c));
            self.set(r, c, v);
        }
    }

    /// Canonical basis of the null space {v : m·v = 0}.
    pub fn kernel(&self) -> crate::subspace::Subspace {
        let red = self.rref();
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (row, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.matrix.get(row, free);
            }
            basis.push(v);
        }
        crate::subspace::Subspace::from_rows(basis, self.cols, self.field)
    }

    /// Canonical basis of the column space, as vectors of length `rows`.
    pub fn image(&self) -> crate::subspace::Subspace {
        let rows: Vec<Vec<Scalar>> = (0..self.cols).map(|c| self.column(c)).collect();
        crate::subspace::Subspace::from_rows(rows, self.rows, self.field)
    }

    /// One particular solution of m·x = b, or `None` when inconsistent.
    /// Free variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let rhs = Matrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect(), 1, self.field)
            .expect("column vector");
        let red = self.hstack(&rhs).expect("augment").rref();
        if red.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (row, &p) in red.pivots.iter().enumerate() {
            x[p] = red.matrix.get(row, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn qmat(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Q.integer(n)).collect())
                .collect(),
            cols,
            Q,
        )
        .unwrap()
    }

    #[test]
    fn rref_identity_fixed() {
        let id = Matrix::identity(3, Q);
        let red = id.rref();
        assert_eq!(red.matrix, id);
        assert_eq!(red.pivots, vec![0, 1, 2]);
        assert_eq!(red.rank, 3);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = Matrix::zero(2, 3, Q);
        let red = z.rref();
        assert_eq!(red.matrix, z);
        assert!(red.pivots.is_empty());
        assert_eq!(red.rank, 0);
    }

    #[test]
    fn rref_proportional_rows() {
        let red = qmat(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(red.matrix, qmat(&[&[1, 2], &[0, 0]]));
        assert_eq!(red.rank, 1);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(Matrix::identity(4, Q).kernel().dim(), 0);
    }

    #[test]
    fn kernel_of_zero_is_full() {
        assert_eq!(Matrix::zero(3, 5, Q).kernel().dim(), 5);
    }

    #[test]
    fn kernel_single_relation() {
        let k = qmat(&[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0), &[Q.integer(1), Q.integer(-1)][..]);
    }

    #[test]
    fn image_cases() {
        assert_eq!(Matrix::identity(3, Q).image().dim(), 3);
        assert_eq!(Matrix::zero(3, 2, Q).image().dim(), 0);
        let col = qmat(&[&[1], &[2]]);
        let im = col.image();
        assert_eq!(im.dim(), 1);
        assert_eq!(im.basis().row(0), &[Q.integer(1), Q.integer(2)][..]);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = vec![Q.integer(3), Q.integer(-1)];
        assert_eq!(Matrix::identity(2, Q).solve(&b).unwrap(), b);
    }

    #[test]
    fn solve_zeros_free_variables() {
        let m = qmat(&[&[1, 1]]);
        assert_eq!(
            m.solve(&[Q.integer(2)]).unwrap(),
            vec![Q.integer(2), Q.integer(0)]
        );
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let m = Matrix::zero(1, 2, Q);
        assert!(m.solve(&[Q.integer(1)]).is_none());
    }

    #[test]
    fn solve_over_prime_field() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let m = Matrix::from_rows(vec![vec![f5.integer(2)]], 1, f5).unwrap();
        assert_eq!(m.solve(&[f5.integer(1)]).unwrap(), vec![f5.integer(3)]);
    }
}
