//! Chinese remaindering and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Combines residues with pairwise coprime moduli into `(value, product)`
/// with `0 <= value < product`.
pub fn crt_combine(residues: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let (first, rest) = residues
        .split_first()
        .ok_or_else(|| Error::InvalidInput("no residues to combine".into()))?;
    check_residue(first)?;
    let (mut value, mut modulus) = first.clone();
    for r in rest {
        check_residue(r)?;
        let (a, m) = r;
        let inv = inverse_mod(&modulus, m)
            .ok_or_else(|| Error::InvalidInput(format!("moduli {modulus} and {m} are not coprime")))?;
        let t = ((a - &value) * inv).mod_floor(m);
        value += &modulus * t;
        modulus *= m;
    }
    Ok((value, modulus))
}

fn check_residue((v, m): &(BigInt, BigInt)) -> Result<()> {
    if m < &BigInt::from(2) {
        return Err(Error::InvalidInput(format!("modulus {m} is below 2")));
    }
    if v.is_negative() || v >= m {
        return Err(Error::InvalidInput(format!("residue {v} is not reduced modulo {m}")));
    }
    Ok(())
}

/// Symmetric reconstruction bound `floor(sqrt((m - 1) / 2))`.
pub fn reconstruction_bound(m: &BigInt) -> BigInt {
    ((m - 1u32) / 2u32).sqrt()
}

/// Recovers `p/q` with `p * q^-1 = a (mod m)` and `|p|, q` within the
/// symmetric bound, by the half-extended Euclidean algorithm.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Result<Rational> {
    if m < &BigInt::from(2) {
        return Err(Error::InvalidInput(format!("modulus {m} is below 2")));
    }
    let bound = reconstruction_bound(m);
    let fail = || Error::ReconstructionFailed {
        modulus: m.to_string(),
        bound: bound.to_string(),
    };
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() || !t1.gcd(m).is_one() {
        return Err(fail());
    }
    Ok(Rational::new(r1, t1))
}
