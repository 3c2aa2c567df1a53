use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::prime_field::{check_modulus, inv_mod, mul_mod, reduce_bigint, PrimeFieldElem};
use super::rational::{format_rational, primitive_integer_vector, Rational};
use crate::error::{Error, Result};
use crate::linalg::{gauss_jordan_nullspace, mat_vec, nullspace_mod_p, DenseMatrix, NullspaceBasis};

/// Which coefficient domain a computation ran over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Arithmetic context for a coefficient field.
///
/// Elements carry no context of their own; the context supplies zero, one and
/// the operations. This keeps prime-field elements a bare `u64` in hot loops.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem>;
    /// Canonical text form of an element (`"p/q"` over Q, the residue over GF(p)).
    fn render(&self, a: &Self::Elem) -> String;
    /// Parses the canonical text form.
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn mul_u64(&self, a: &Self::Elem, k: u64) -> Self::Elem {
        self.mul(a, &self.from_i64(k as i64))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Canonical scalar multiple of a nonzero vector whose entry at `pivot`
    /// is nonzero: monic at the pivot unless the field overrides it.
    fn normalize(&self, v: &[Self::Elem], pivot: usize) -> Vec<Self::Elem> {
        match self.inv(&v[pivot]) {
            Some(inv) => v.iter().map(|x| self.mul(x, &inv)).collect(),
            None => v.to_vec(),
        }
    }

    /// Reduced kernel basis. Plain Gauss-Jordan unless the field overrides it.
    fn nullspace(&self, m: &DenseMatrix<Self::Elem>) -> NullspaceBasis<Self::Elem> {
        gauss_jordan_nullspace(self, m)
    }
}

/// The rationals, backed by arbitrary-precision fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational> {
        Ok(q.clone())
    }
    fn render(&self, a: &Rational) -> String {
        format_rational(a)
    }
    fn parse(&self, text: &str) -> Result<Rational> {
        super::rational::parse_rational(text)
    }
    fn is_negative(&self, a: &Rational) -> bool {
        a.is_negative()
    }
    fn mul_u64(&self, a: &Rational, k: u64) -> Rational {
        Rational::new(a.numer() * BigInt::from(k), a.denom().clone())
    }
    /// Coprime integers with a positive pivot entry.
    fn normalize(&self, v: &[Rational], pivot: usize) -> Vec<Rational> {
        primitive_integer_vector(v, Some(pivot))
            .into_iter()
            .map(Rational::from_integer)
            .collect()
    }
    fn nullspace(&self, m: &DenseMatrix<Rational>) -> NullspaceBasis<Rational> {
        crate::linalg::rational_nullspace(m)
    }
}

/// The prime field GF(p) for a prime `p < 2^32`, elements as reduced `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> PrimeFieldElem {
        PrimeFieldElem::from_raw(v % self.p, self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Rational) -> Result<u64> {
        let den = reduce_bigint(q.denom(), self.p);
        let inv = inv_mod(den, self.p).ok_or_else(|| Error::UnluckyPrime {
            prime: self.p,
            reason: format!("denominator of {q} is divisible by {}", self.p),
        })?;
        Ok(mul_mod(reduce_bigint(q.numer(), self.p), inv, self.p))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, text: &str) -> Result<u64> {
        let q = super::rational::parse_rational(text)?;
        self.from_rational(&q)
    }
    fn mul_u64(&self, a: &u64, k: u64) -> u64 {
        mul_mod(*a, k % self.p, self.p)
    }
    fn nullspace(&self, m: &DenseMatrix<u64>) -> NullspaceBasis<u64> {
        let basis = nullspace_mod_p(m, self.p);
        if cfg!(debug_assertions) {
            for v in &basis.vectors {
                assert!(
                    mat_vec(self, m, v).iter().all(|&x| x == 0),
                    "kernel vector does not annihilate the matrix"
                );
            }
        }
        basis
    }
}

/// Converts a slice of rationals into field elements.
pub fn reduce_all<F: Field>(field: &F, data: &[Rational]) -> Result<Vec<F::Elem>> {
    data.iter().map(|q| field.from_rational(q)).collect()
}
