//! Decomposition of a centerless algebra into indecomposable ideals, by
//! splitting centroid elements along the linear factors of their minimal
//! polynomials. Anything the root search cannot certify is reported as
//! `Undecided` rather than guessed.

use crate::algebra::LieSuperalgebra;
use crate::endspace::{self, GradedEndSpace};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linmap::{LinearMap, Parity};
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Result of [`LieSuperalgebra::decompose_indecomposable`]: either a full
/// list of pairwise-complementary indecomposable ideals with the projections
/// onto them, or an honest refusal.
#[derive(Debug, Clone)]
pub enum Decomposition {
    Ideals {
        ideals: Vec<Subspace>,
        projections: Vec<LinearMap>,
    },
    Undecided,
}

impl Decomposition {
    pub fn ideal_dims(&self) -> Option<Vec<usize>> {
        match self {
            Decomposition::Ideals { ideals, .. } => Some(ideals.iter().map(Subspace::dim).collect()),
            Decomposition::Undecided => None,
        }
    }
}

impl LieSuperalgebra {
    /// Even maps commuting with all bracket multiplications; see
    /// [`endspace::centroid`].
    pub fn centroid(&self) -> GradedEndSpace {
        endspace::centroid(self)
    }

    /// Splits a centerless algebra into indecomposable ideals when the
    /// centroid's minimal polynomials factor over the field; `Undecided`
    /// otherwise. A centroid of dimension 1 certifies indecomposability.
    pub fn decompose_indecomposable(&self) -> Result<Decomposition> {
        if !self.is_centerless() {
            return Err(Error::CenterNotZero);
        }
        if self.dim() == 0 {
            return Ok(Decomposition::Ideals {
                ideals: Vec::new(),
                projections: Vec::new(),
            });
        }
        match split(self)? {
            None => Ok(Decomposition::Undecided),
            Some(ideals) => {
                let projections = projections_onto(self, &ideals);
                Ok(Decomposition::Ideals { ideals, projections })
            }
        }
    }
}

fn split(l: &LieSuperalgebra) -> Result<Option<Vec<Subspace>>> {
    let c = l.centroid();
    if c.total_dim() == 1 {
        return Ok(Some(vec![Subspace::full(l.dim(), l.field())]));
    }
    let n = l.dim();
    let field = l.field();
    'candidates: for theta in c.even_basis() {
        let mu = minimal_polynomial(theta.matrix());
        if mu.len() <= 2 {
            continue; // scalar map, nothing to split on
        }
        let Some(roots) = roots_in_field(&mu, field) else {
            continue; // root search not exhaustive over this field
        };
        let mut rest = mu.clone();
        let mut linear_factors: Vec<(Scalar, usize)> = Vec::new();
        for r in roots {
            let mut multiplicity = 0;
            while let Some(q) = divide_by_linear(&rest, &r) {
                rest = q;
                multiplicity += 1;
            }
            if multiplicity > 0 {
                linear_factors.push((r, multiplicity));
            }
        }
        let piece_count = linear_factors.len() + usize::from(rest.len() > 1);
        if piece_count < 2 {
            continue;
        }
        // kernels of the pairwise-coprime factor evaluations: ideals that sum to L
        let mut pieces: Vec<Subspace> = Vec::new();
        for (r, multiplicity) in &linear_factors {
            let shifted = theta
                .matrix()
                .sub(&Matrix::identity(n, field).scaled(r))
                .expect("same shape");
            let mut power = Matrix::identity(n, field);
            for _ in 0..*multiplicity {
                power = power.mul(&shifted).expect("square");
            }
            pieces.push(power.kernel());
        }
        if rest.len() > 1 {
            pieces.push(evaluate_on_matrix(&rest, theta.matrix()).kernel());
        }
        let total: usize = pieces.iter().map(Subspace::dim).sum();
        assert_eq!(total, n, "coprime factor kernels must sum to the whole space");
        let mut out = Vec::new();
        for piece in &pieces {
            let (sub, inclusion) = l.induced_subalgebra(piece)?;
            match split(&sub)? {
                None => continue 'candidates,
                Some(sub_ideals) => {
                    for ideal in sub_ideals {
                        let rows: Vec<Vec<Scalar>> =
                            ideal.basis_rows().map(|v| inclusion.apply(v)).collect();
                        out.push(Subspace::from_rows(rows, n, field));
                    }
                }
            }
        }
        return Ok(Some(out));
    }
    Ok(None)
}

/// The projections p_i with image the i-th ideal and kernel the sum of the
/// others; they are even, idempotent, pairwise orthogonal and sum to the
/// identity.
fn projections_onto(l: &LieSuperalgebra, ideals: &[Subspace]) -> Vec<LinearMap> {
    let n = l.dim();
    let field = l.field();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    for (idx, ideal) in ideals.iter().enumerate() {
        for row in ideal.basis_rows() {
            columns.push(row.to_vec());
            owner.push(idx);
        }
    }
    assert_eq!(columns.len(), n, "ideal bases must form a basis of L");
    let change = Matrix::from_fn(n, n, field, |r, c| columns[c][r].clone());
    let mut projection_matrices = vec![Matrix::zero(n, n, field); ideals.len()];
    for k in 0..n {
        let unit: Vec<Scalar> = (0..n)
            .map(|r| {
                if r == k {
                    Scalar::one(field)
                } else {
                    Scalar::zero(field)
                }
            })
            .collect();
        let coeffs = change.solve(&unit).expect("ideal bases form a basis");
        for (c, coeff) in coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let target = &mut projection_matrices[owner[c]];
            for r in 0..n {
                let v = target.get(r, k) + &(coeff * &columns[c][r]);
                target.set(r, k, v);
            }
        }
    }
    projection_matrices
        .into_iter()
        .map(|m| {
            LinearMap::new(l.dims(), l.dims(), Parity::Even, m)
                .expect("projections onto graded ideals are even")
        })
        .collect()
}

/// Monic minimal polynomial of a square matrix, coefficients ascending.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Scalar> {
    let n = m.rows();
    let field = m.field();
    assert_eq!(n, m.cols(), "minimal polynomial of a square matrix");
    let mut powers: Vec<Matrix> = vec![Matrix::identity(n, field)];
    loop {
        let k = powers.len();
        let next = powers.last().unwrap().mul(m).expect("square");
        let vecs: Vec<Vec<Scalar>> = powers.iter().map(Matrix::vectorize).collect();
        let system = Matrix::from_fn(n * n, k, field, |r, c| vecs[c][r].clone());
        if let Some(coeffs) = system.solve(&next.vectorize()) {
            // x^k - Σ coeffs_i x^i
            let mut poly: Vec<Scalar> = coeffs.iter().map(|c| -c).collect();
            poly.push(Scalar::one(field));
            return poly;
        }
        powers.push(next);
        assert!(powers.len() <= n + 1, "minimal polynomial degree exceeds the dimension");
    }
}

fn evaluate_on_matrix(poly: &[Scalar], m: &Matrix) -> Matrix {
    let n = m.rows();
    let field = m.field();
    let mut acc = Matrix::zero(n, n, field);
    let mut power = Matrix::identity(n, field);
    for (i, coeff) in poly.iter().enumerate() {
        if !coeff.is_zero() {
            acc = acc.add(&power.scaled(coeff)).expect("same shape");
        }
        if i + 1 < poly.len() {
            power = power.mul(m).expect("square");
        }
    }
    acc
}

fn evaluate_scalar(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero(x.field());
    for coeff in poly.iter().rev() {
        acc = &(&acc * x) + coeff;
    }
    acc
}

/// Synthetic division by (x − r); `None` when r is not a root.
fn divide_by_linear(poly: &[Scalar], r: &Scalar) -> Option<Vec<Scalar>> {
    if poly.len() < 2 {
        return None;
    }
    let mut quotient = vec![Scalar::zero(r.field()); poly.len() - 1];
    let mut carry = Scalar::zero(r.field());
    for i in (0..poly.len() - 1).rev() {
        carry = &poly[i + 1] + &(r * &carry);
        quotient[i] = carry.clone();
    }
    let remainder = &poly[0] + &(r * &quotient[0]);
    if remainder.is_zero() {
        Some(quotient)
    } else {
        None
    }
}

/// All roots of the polynomial lying in the field, or `None` when the search
/// cannot be made exhaustive (huge coefficients over ℚ, huge p over 𝔽_p).
fn roots_in_field(poly: &[Scalar], field: FieldSpec) -> Option<Vec<Scalar>> {
    match field {
        FieldSpec::Rationals => rational_roots(poly),
        FieldSpec::PrimeField(p) if p <= 1 << 16 => Some(
            (0..p)
                .map(|r| Scalar::from_integer(r as i64, field))
                .filter(|r| evaluate_scalar(poly, r).is_zero())
                .collect(),
        ),
        FieldSpec::PrimeField(_) => None,
    }
}

fn rational_roots(poly: &[Scalar]) -> Option<Vec<Scalar>> {
    let rats: Vec<&num::BigRational> = poly
        .iter()
        .map(|s| match s {
            Scalar::Rat(r) => r,
            Scalar::Mod { .. } => unreachable!("rational polynomial"),
        })
        .collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let mut roots = Vec::new();
    let trailing = ints.iter().position(|c| !c.is_zero())?;
    if trailing > 0 {
        roots.push(Scalar::zero(FieldSpec::Rationals));
    }
    let leading = ints.last().expect("monic input");
    let numerators = divisors(&ints[trailing].abs())?;
    let denominators = divisors(&leading.abs())?;
    for p in &numerators {
        for q in &denominators {
            for sign in [1i64, -1] {
                let candidate = Scalar::Rat(num::BigRational::new(
                    BigInt::from(*p) * BigInt::from(sign),
                    BigInt::from(*q),
                ));
                if evaluate_scalar(poly, &candidate).is_zero() && !roots.contains(&candidate) {
                    roots.push(candidate);
                }
            }
        }
    }
    Some(roots)
}

/// Positive divisors by trial division; `None` when the number is too large
/// to factor confidently at desk scale.
fn divisors(n: &BigInt) -> Option<Vec<u128>> {
    let n: u128 = n.try_into().ok().filter(|&v: &u128| v <= 1 << 80)?;
    if n == 0 {
        return None;
    }
    let mut primes: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;
    let mut d: u128 = 2;
    while d <= 1_000_000 && d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += 1;
    }
    if rest > 1 {
        if rest > 1_000_000_000_000 {
            return None; // cannot certify primality of the cofactor
        }
        primes.push((rest, 1));
    }
    let mut out = vec![1u128];
    for (p, e) in primes {
        let mut grown = Vec::new();
        for base in &out {
            let mut v = *base;
            for _ in 0..e {
                v *= p;
                grown.push(v);
            }
        }
        out.extend(grown);
    }
    Some(out)
}
