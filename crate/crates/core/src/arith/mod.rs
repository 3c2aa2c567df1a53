//! Coefficient domains: rationals, prime fields, and the bridges between them.

pub mod crt;
pub mod field;
pub mod prime_field;
pub mod rational;

pub use crt::{crt_combine, rational_reconstruct, reconstruction_bound};
pub use field::{reduce_all, Field, FieldDescriptor, PrimeField, Rationals};
pub use prime_field::{default_primes, is_prime, mod_reduce, prime_ladder, PrimeFieldElem, MAX_MODULUS};
pub use rational::{format_rational, int, parse_rational, ratio, Rational};
