//! Ansatz-based guessing of differential and difference equations.

mod function;
mod sequence;
mod solve;
mod verify;

use serde::Serialize;

use crate::arith::{Field, FieldDescriptor};
use crate::error::{Error, Result};
use crate::monomial::binomial;
use crate::poly::{EquationDoc, Poly, PolyKind};

pub use function::{guess_function, guess_function_fixed_order, guess_function_fixed_order_in, guess_function_in};
pub use sequence::{guess_sequence, guess_sequence_in};
pub use verify::{separant_nonzero, seq_initial_and_rationalizing, shift_offset, verify_candidate, VerifyReport};

/// Parameters of a guess.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessConfig {
    pub kind: PolyKind,
    /// Maximal number of factors per monomial.
    pub k: usize,
    /// Degree bound of the polynomial coefficients; ignored for sequences.
    pub d: usize,
    /// Smallest order tried.
    pub r_min: usize,
    /// Fall back to the per-monomial degree search when the main loop fails.
    pub all_poly_deg: bool,
    /// Number of leading terms dropped before guessing.
    pub offset: usize,
    /// Admit a constant term in difference equations.
    pub affine: bool,
    /// Extra rows taken past the data horizon in the degree search, paid for
    /// by dropping the low powers of `x` whose coefficients would need
    /// unknown terms.
    pub presume_rows: usize,
}

impl GuessConfig {
    /// Differential-equation search with the usual defaults.
    pub fn function(k: usize, d: usize) -> Self {
        Self {
            kind: PolyKind::Differential,
            k,
            d,
            r_min: 0,
            all_poly_deg: false,
            offset: 0,
            affine: false,
            presume_rows: 0,
        }
    }

    /// Difference-equation search with a constant term allowed.
    pub fn sequence(k: usize) -> Self {
        Self {
            kind: PolyKind::Difference,
            k,
            d: 0,
            r_min: 0,
            all_poly_deg: false,
            offset: 0,
            affine: true,
            presume_rows: 0,
        }
    }

    pub fn with_r_min(mut self, r_min: usize) -> Self {
        self.r_min = r_min;
        self
    }

    pub fn with_all_poly_deg(mut self, on: bool) -> Self {
        self.all_poly_deg = on;
        self
    }

    pub fn with_offset(mut self, offset: usize) -> Self {
        self.offset = offset;
        self
    }

    pub fn with_affine(mut self, on: bool) -> Self {
        self.affine = on;
        self
    }

    pub fn with_presume_rows(mut self, t: usize) -> Self {
        self.presume_rows = t;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInput("degree bound k must be at least 1".into()));
        }
        if self.kind == PolyKind::Difference && self.d != 0 {
            return Err(Error::InvalidInput(
                "difference equations use constant coefficients (d = 0)".into(),
            ));
        }
        if self.kind == PolyKind::Differential && self.affine {
            return Err(Error::InvalidInput(
                "differential equations are homogeneous; the constant term is not allowed".into(),
            ));
        }
        Ok(())
    }
}

/// A basis of verified equations plus the shape of the ansatz that found it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessResult<E> {
    pub basis: Vec<Poly<E>>,
    /// Highest order in the ansatz.
    pub order: u32,
    /// Index of the last monomial in the ansatz.
    pub delta_order: usize,
    /// Coefficient degree per monomial index (all zero for sequences).
    pub degrees: Vec<usize>,
    pub rows_solved: usize,
    pub rows_verified: usize,
    pub field: FieldDescriptor,
}

impl<E: Clone> GuessResult<E> {
    pub fn to_doc<F: Field<Elem = E>>(&self, field: &F) -> ResultDoc {
        ResultDoc {
            field: self.field.to_string(),
            order: self.order,
            delta_order: self.delta_order,
            degrees: self.degrees.clone(),
            rows_solved: self.rows_solved,
            rows_verified: self.rows_verified,
            basis: self.basis.iter().map(|p| p.to_doc(field)).collect(),
        }
    }
}

/// Serialized guess result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ResultDoc {
    pub field: String,
    pub order: u32,
    pub delta_order: usize,
    pub degrees: Vec<usize>,
    pub rows_solved: usize,
    pub rows_verified: usize,
    pub basis: Vec<EquationDoc>,
}

/// Largest order `r` for which the full ansatz on terms `0..=n_last` is
/// square or overdetermined; `None` when not even order zero fits.
pub fn max_admissible_order(kind: PolyKind, n_last: usize, k: usize, d: usize) -> Option<usize> {
    let fits = |r: usize| -> bool {
        let c = binomial(r + k, k);
        match kind {
            PolyKind::Differential => (c + 1).saturating_mul(d + 1).saturating_add(r) <= n_last + 2,
            PolyKind::Difference => c.saturating_add(r) <= n_last + 1,
        }
    };
    if !fits(0) {
        return None;
    }
    let mut r = 0;
    while fits(r + 1) {
        r += 1;
    }
    Some(r)
}

/// Fewest terms for which order zero is admissible.
pub(crate) fn min_terms(kind: PolyKind, d: usize) -> usize {
    match kind {
        PolyKind::Differential => 2 * (d + 1) - 1,
        PolyKind::Difference => 1,
    }
}

/// All tuples `(d_0, ..., d_{r})` with entries at most `d`, maximum exactly
/// `d` and sum `d_star`, in descending lexicographic order. Empty when
/// `d_star` exceeds `row_budget`.
pub fn degree_tuples(d: usize, d_star: usize, r_delta_star: usize, row_budget: usize) -> Vec<Vec<usize>> {
    if d_star > row_budget {
        return Vec::new();
    }
    let lo = vec![0; r_delta_star + 1];
    bounded_tuples(d, &lo, d_star + r_delta_star + 1)
}

/// Tuples `(d_j)` with `max d_j = d` whose column counts
/// `d_j + 1 - lo_j` sum to `columns`. An entry `lo_j - 1` stands for "no
/// columns" when `lo_j > 0`. Descending lexicographic order.
pub(crate) fn bounded_tuples(d: usize, lo: &[usize], columns: usize) -> Vec<Vec<usize>> {
    fn rec(
        d: usize,
        lo: &[usize],
        j: usize,
        left: usize,
        hit_max: bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if j == lo.len() {
            if left == 0 && hit_max {
                out.push(cur.clone());
            }
            return;
        }
        // remaining capacity of the later entries
        let cap: usize = lo[j + 1..].iter().map(|&l| (d + 1).saturating_sub(l)).sum();
        let min_dj = lo[j].saturating_sub(1);
        for dj in (min_dj..=d).rev() {
            let count = (dj + 1).saturating_sub(lo[j]);
            if count > left || left - count > cap {
                continue;
            }
            cur.push(dj);
            rec(d, lo, j + 1, left - count, hit_max || dj == d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo.iter().any(|&l| l > d + 1) {
        return out;
    }
    rec(d, lo, 0, columns, false, &mut Vec::new(), &mut out);
    out
}
