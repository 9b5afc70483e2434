//! Parity-tagged linear maps between graded spaces.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use std::fmt;

/// ℤ₂-degree of a homogeneous object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn compose(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The sign (−1)^{|a||b|} that graded identities carry.
    pub fn sign_with(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Dimensions of a ℤ₂-graded space, even part then odd part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradedDim {
    pub even: usize,
    pub odd: usize,
}

impl GradedDim {
    pub fn new(even: usize, odd: usize) -> GradedDim {
        GradedDim { even, odd }
    }

    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    /// Parity of coordinate `i` under the even-block-then-odd-block ordering.
    pub fn parity_of_index(&self, i: usize) -> Parity {
        if i < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

/// A homogeneous linear map between graded spaces, stored as the matrix whose
/// column j is the image of the j-th domain basis vector.
///
/// Even maps preserve the parity blocks, odd maps swap them; entries outside
/// the allowed blocks must vanish and construction enforces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    domain: GradedDim,
    codomain: GradedDim,
    parity: Parity,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: GradedDim, codomain: GradedDim, parity: Parity, matrix: Matrix) -> Result<LinearMap> {
        if matrix.rows() != codomain.total() || matrix.cols() != domain.total() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.total(),
                domain.total()
            )));
        }
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                let allowed = codomain.parity_of_index(r)
                    == domain.parity_of_index(c).compose(parity);
                if !allowed && !matrix.get(r, c).is_zero() {
                    return Err(Error::ParityBlockViolation(format!(
                        "nonzero entry at ({r}, {c}) in a {parity} map {domain} -> {codomain}"
                    )));
                }
            }
        }
        Ok(LinearMap {
            domain,
            codomain,
            parity,
            matrix,
        })
    }

    pub fn zero(domain: GradedDim, codomain: GradedDim, parity: Parity, field: FieldSpec) -> LinearMap {
        LinearMap {
            domain,
            codomain,
            parity,
            matrix: Matrix::zero(codomain.total(), domain.total(), field),
        }
    }

    pub fn identity(space: GradedDim, field: FieldSpec) -> LinearMap {
        LinearMap {
            domain: space,
            codomain: space,
            parity: Parity::Even,
            matrix: Matrix::identity(space.total(), field),
        }
    }

    pub fn domain(&self) -> GradedDim {
        self.domain
    }

    pub fn codomain(&self) -> GradedDim {
        self.codomain
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// Image of the j-th domain basis vector.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.matrix.column(j)
    }

    fn check_same_shape(&self, rhs: &LinearMap) -> Result<()> {
        if self.domain != rhs.domain || self.codomain != rhs.codomain {
            return Err(Error::Shape("map shape mismatch".into()));
        }
        Ok(())
    }

    /// Sum of two maps of equal parity.
    pub fn add(&self, rhs: &LinearMap) -> Result<LinearMap> {
        self.check_same_shape(rhs)?;
        if self.parity != rhs.parity {
            return Err(Error::Shape("cannot add maps of different parity".into()));
        }
        Ok(LinearMap {
            domain: self.domain,
            codomain: self.codomain,
            parity: self.parity,
            matrix: self.matrix.add(&rhs.matrix)?,
        })
    }

    pub fn sub(&self, rhs: &LinearMap) -> Result<LinearMap> {
        self.add(&rhs.scaled(&Scalar::from_integer(-1, rhs.field())))
    }

    pub fn scaled(&self, k: &Scalar) -> LinearMap {
        LinearMap {
            domain: self.domain,
            codomain: self.codomain,
            parity: self.parity,
            matrix: self.matrix.scaled(k),
        }
    }

    /// self ∘ rhs.
    pub fn compose(&self, rhs: &LinearMap) -> Result<LinearMap> {
        if rhs.codomain != self.domain {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, rhs.domain, rhs.codomain
            )));
        }
        Ok(LinearMap {
            domain: rhs.domain,
            codomain: self.codomain,
            parity: self.parity.compose(rhs.parity),
            matrix: self.matrix.mul(&rhs.matrix)?,
        })
    }

    /// Supercommutator [P, Q] = PQ − (−1)^{|P||Q|} QP on endomorphisms.
    pub fn supercommutator(&self, rhs: &LinearMap) -> Result<LinearMap> {
        if self.domain != self.codomain || rhs.domain != rhs.codomain || self.domain != rhs.domain {
            return Err(Error::Shape(
                "supercommutator needs endomorphisms of one space".into(),
            ));
        }
        let pq = self.compose(rhs)?;
        let qp = rhs.compose(self)?;
        let sign = self.parity.sign_with(rhs.parity);
        pq.add(&qp.scaled(&Scalar::from_integer(-sign, self.field())))
    }

    /// Row-major flattening of the matrix; the coordinate form used to put
    /// spaces of maps into canonical RREF.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.matrix.vectorize()
    }

    pub fn from_vectorized(
        v: &[Scalar],
        domain: GradedDim,
        codomain: GradedDim,
        parity: Parity,
        field: FieldSpec,
    ) -> Result<LinearMap> {
        let matrix = Matrix::from_vectorized(v, codomain.total(), domain.total(), field);
        LinearMap::new(domain, codomain, parity, matrix)
    }
}
