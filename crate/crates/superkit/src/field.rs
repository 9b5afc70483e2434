//! Exact scalars over the rationals and over prime fields.
//!
//! Every [`Scalar`] carries the [`FieldSpec`] it lives in; arithmetic across
//! different fields is rejected rather than coerced. Rationals are kept
//! reduced with positive denominator, residues are kept in `0..p`, so equal
//! scalars are structurally equal.

use crate::error::{Error, Result};
use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// The base field of a computation: ℚ or 𝔽_p for a prime p < 2^32.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Validates the modulus: prime and small enough that products fit in u64.
    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        if p >= 1 << 32 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// Whether 2 is invertible, i.e. the theorems' hypothesis ½ ∈ R holds.
    pub fn has_half(&self) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::PrimeField(p) => *p != 2,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        Scalar::from_integer(n, *self)
    }

    /// Parses the wire form: "a" or "a/b" over ℚ, an integer over 𝔽_p.
    /// Inputs are canonicalized (fractions reduced, residues wrapped into 0..p).
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        match self {
            FieldSpec::Rationals => {
                let (num_str, den_str) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let num = BigInt::from_str(num_str.trim())
                    .map_err(|_| Error::Parse(format!("bad rational: {text:?}")))?;
                let den = BigInt::from_str(den_str.trim())
                    .map_err(|_| Error::Parse(format!("bad rational: {text:?}")))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator: {text:?}")));
                }
                Ok(Scalar::Rat(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                let n = BigInt::from_str(text)
                    .map_err(|_| Error::Parse(format!("bad residue: {text:?}")))?;
                Ok(Scalar::Mod {
                    value: residue(&n, *p),
                    p: *p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn residue(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let m = if m.sign() == Sign::Minus { m + BigInt::from(p) } else { m };
    let (_, digits) = m.to_u64_digits();
    *digits.first().unwrap_or(&0)
}

/// An exact field element: a reduced rational or a residue mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Mod { value: 0, p },
        }
    }

    pub fn one(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField(p) => Scalar::Mod { value: 1 % p, p },
        }
    }

    pub fn from_integer(n: i64, field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Scalar::Mod {
                value: residue(&BigInt::from(n), p),
                p,
            },
        }
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, p } => *value == 1 % *p,
        }
    }

    fn check_same_field(&self, rhs: &Scalar) -> Result<()> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch(
                self.field().to_string(),
                rhs.field().to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + p - b) % p,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a * b) % p,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same_field(rhs)?;
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: mod_inverse(*value, *p),
                p: *p,
            },
        })
    }

    /// Reinterprets the scalar in another field where that is faithful:
    /// ℚ → 𝔽_p reduces (refused when p divides a denominator); everything
    /// else besides the identity coercion is refused as silently lossy.
    pub fn coerce(&self, target: FieldSpec) -> Result<Scalar> {
        match (self, target) {
            (Scalar::Rat(_), FieldSpec::Rationals) => Ok(self.clone()),
            (Scalar::Mod { p, .. }, FieldSpec::PrimeField(q)) if *p == q => Ok(self.clone()),
            (Scalar::Rat(r), FieldSpec::PrimeField(p)) => {
                let den = residue(r.denom(), p);
                if den == 0 {
                    return Err(Error::CoercionRefused(format!(
                        "denominator of {self} is not invertible mod {p}"
                    )));
                }
                let num = residue(r.numer(), p);
                Ok(Scalar::Mod {
                    value: num * mod_inverse(den, p) % p,
                    p,
                })
            }
            (Scalar::Mod { .. }, _) => Err(Error::CoercionRefused(format!(
                "cannot reinterpret {} residue {self} over {target}",
                self.field()
            ))),
        }
    }
}

// Extended Euclid; panics on p = 0 which FieldSpec construction forbids.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    ((t.rem_euclid(p as i128)) as u64) % p
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::zero(self.field()).checked_sub(self).unwrap()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
