use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Largest modulus accepted; residue products then fit in a `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^31 in descending order.
pub fn prime_ladder() -> impl Iterator<Item = u64> {
    (3..(1u64 << 31)).rev().step_by(2).filter(|&n| is_prime(n))
}

/// The `count` largest primes below 2^31, in descending order.
pub fn default_primes(count: usize) -> Vec<u64> {
    prime_ladder().take(count).collect()
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // extended Euclid; p may be any modulus here
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

pub(crate) fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Residue class modulo a word-size prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    value: u64,
    modulus: u64,
}

impl PrimeFieldElem {
    /// Reduces `value` into `[0, modulus)`. The modulus must be prime and at most [`MAX_MODULUS`].
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        })
    }

    pub(crate) fn from_raw(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Self { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Self> {
        inv_mod(self.value, self.modulus).map(|v| Self::from_raw(v, self.modulus))
    }

    pub fn pow(self, exp: u64) -> Self {
        Self::from_raw(pow_mod(self.value, exp, self.modulus), self.modulus)
    }

    fn same_field(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic between residues of different moduli"
        );
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeFieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self::from_raw((self.value + rhs.value) % self.modulus, self.modulus)
    }
}

impl Sub for PrimeFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self::from_raw((self.value + self.modulus - rhs.value) % self.modulus, self.modulus)
    }
}

impl Mul for PrimeFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self::from_raw(mul_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Neg for PrimeFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_raw((self.modulus - self.value) % self.modulus, self.modulus)
    }
}

impl Div for PrimeFieldElem {
    type Output = Self;
    /// Panics when dividing by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero residue")
    }
}

pub(crate) fn check_modulus(p: u64) -> Result<()> {
    if p > MAX_MODULUS {
        return Err(Error::InvalidInput(format!(
            "modulus {p} exceeds the supported word size (max {MAX_MODULUS})"
        )));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("modulus {p} is not prime")));
    }
    Ok(())
}

/// Maps `num/den` to `num * den^-1 mod p`.
pub fn mod_reduce(x: &Rational, p: u64) -> Result<PrimeFieldElem> {
    check_modulus(p)?;
    let den = reduce_bigint(x.denom(), p);
    if den == 0 {
        return Err(Error::UnluckyPrime {
            prime: p,
            reason: format!("denominator of {x} is divisible by {p}"),
        });
    }
    let num = reduce_bigint(x.numer(), p);
    let inv = inv_mod(den, p).expect("nonzero residue mod prime is invertible");
    Ok(PrimeFieldElem::from_raw(mul_mod(num, inv, p), p))
}

/// Symmetric lift of a residue to `(-p/2, p/2]`.
pub fn symmetric_lift(value: u64, p: u64) -> BigInt {
    let v = BigInt::from(value);
    if value > p / 2 {
        v - BigInt::from(p)
    } else {
        v
    }
}
