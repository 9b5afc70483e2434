//! Subspaces in canonical reduced row-echelon form.
//!
//! Keeping every basis in RREF makes subspace equality plain structural
//! equality, which the theorem checks lean on heavily.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

/// A subspace of F^n, stored as the unique RREF basis of its span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    field: FieldSpec,
    basis: Matrix,
}

impl Subspace {
    /// Canonicalizes arbitrary spanning rows: RREF, zero rows dropped.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, ambient_dim: usize, field: FieldSpec) -> Subspace {
        let m = Matrix::from_rows(rows, ambient_dim, field).expect("spanning rows");
        let red = m.rref();
        let kept: Vec<Vec<Scalar>> = (0..red.rank).map(|r| red.matrix.row(r).to_vec()).collect();
        Subspace {
            ambient_dim,
            field,
            basis: Matrix::from_rows(kept, ambient_dim, field).expect("rref rows"),
        }
    }

    pub fn zero(ambient_dim: usize, field: FieldSpec) -> Subspace {
        Subspace::from_rows(Vec::new(), ambient_dim, field)
    }

    pub fn full(ambient_dim: usize, field: FieldSpec) -> Subspace {
        let id = Matrix::identity(ambient_dim, field);
        let rows = (0..ambient_dim).map(|r| id.row(r).to_vec()).collect();
        Subspace::from_rows(rows, ambient_dim, field)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// The canonical RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim || self.field != other.field {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows: Vec<Vec<Scalar>> = self.basis_rows().map(<[Scalar]>::to_vec).collect();
        rows.extend(other.basis_rows().map(<[Scalar]>::to_vec));
        Ok(Subspace::from_rows(rows, self.ambient_dim, self.field))
    }

    /// Intersection via the kernel of the stacked-basis coefficient system:
    /// a vector lies in both spans iff some (a, b) solves aᵀU − bᵀV = 0.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let k = self.dim();
        let l = other.dim();
        if k == 0 || l == 0 {
            return Ok(Subspace::zero(self.ambient_dim, self.field));
        }
        let coeff = Matrix::from_fn(self.ambient_dim, k + l, self.field, |r, c| {
            if c < k {
                self.basis.get(c, r).clone()
            } else {
                other.basis.get(c - k, r).clone()
            }
        });
        let null = coeff.kernel();
        let members: Vec<Vec<Scalar>> = null
            .basis_rows()
            .map(|ab| {
                let mut v = vec![Scalar::zero(self.field); self.ambient_dim];
                for (i, coeff) in ab[..k].iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (x, b) in v.iter_mut().zip(self.basis.row(i)) {
                        *x = &*x + &(coeff * b);
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_rows(members, self.ambient_dim, self.field))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::AmbientMismatch(v.len(), self.ambient_dim));
        }
        let mut residual = v.to_vec();
        for r in 0..self.dim() {
            let pivot = self
                .basis
                .row(r)
                .iter()
                .position(|s| !s.is_zero())
                .expect("no zero rows in canonical basis");
            let c = residual[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in residual.iter_mut().zip(self.basis.row(r)) {
                *x = &*x - &(&c * b);
            }
        }
        Ok(residual.iter().all(Scalar::is_zero))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for row in other.basis_rows() {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
