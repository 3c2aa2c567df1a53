//! Guessing algebraic differential equations for power series and polynomial
//! difference equations for sequences from finitely many terms.
//!
//! An ansatz with unknown coefficients is evaluated on the data; the kernel of
//! the resulting linear system, over the rationals or a prime field, gives the
//! candidate equations, which are then checked on every trusted row.
//!
//! ```
//! use dalg_core::{builtin_terms, guess_sequence, GuessConfig, Rationals};
//!
//! let fib = builtin_terms("fibonacci", 20).unwrap();
//! let found = guess_sequence(&fib.terms, &GuessConfig::sequence(1)).unwrap().unwrap();
//! assert_eq!(found.basis[0].render(&Rationals), "-s(n) - s(n+1) + s(n+2)");
//! ```

pub mod arith;
pub mod error;
pub mod guess;
pub mod linalg;
pub mod modular;
pub mod monomial;
pub mod poly;
pub mod series;
pub mod sources;

pub use arith::{
    crt_combine, mod_reduce, rational_reconstruct, Field, FieldDescriptor, PrimeField, PrimeFieldElem, Rational,
    Rationals,
};
pub use error::{Error, Result};
pub use guess::{
    degree_tuples, guess_function, guess_function_fixed_order, guess_sequence, max_admissible_order, separant_nonzero,
    seq_initial_and_rationalizing, shift_offset, verify_candidate, GuessConfig, GuessResult, ResultDoc, VerifyReport,
};
pub use linalg::{DenseMatrix, NullspaceBasis};
pub use modular::{guess_modular, multi_prime_reconstruct, support_refit, PrimeRunReport, Support};
pub use monomial::{
    block_bounds, compare_monomials, count_order, delta_index, delta_monomial, DerivMonomial, Variable,
};
pub use poly::{DiffPoly, EquationDoc, Key, Poly, PolyKind, SeqPoly, Term, TermDoc};
pub use series::{series_derivative, series_multiply, TruncSeries};
pub use sources::{builtin_terms, parse_bfile, parse_terms_file, TermList};
