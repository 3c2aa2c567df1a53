use crate::arith::{Field, Rational};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyKind};
use crate::series::Evaluator;

/// Outcome of checking an equation against data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub holds: bool,
    pub rows_checked: usize,
    pub first_failure: Option<usize>,
}

/// Evaluates `p` on every row its terms are trusted on.
pub fn verify_candidate<F: Field>(field: &F, p: &Poly<F::Elem>, data: &[F::Elem]) -> VerifyReport {
    let mut ev = Evaluator::new(field.clone(), p.kind().variable(), data.to_vec());
    verify_on(&mut ev, p)
}

pub(crate) fn verify_on<F: Field>(ev: &mut Evaluator<F>, p: &Poly<F::Elem>) -> VerifyReport {
    let rows = p
        .terms()
        .iter()
        .map(|t| ev.horizon(t.key.xdeg, &t.key.mono) + 1)
        .min()
        .unwrap_or(0)
        .max(0) as usize;
    let field = ev.field().clone();
    for n in 0..rows {
        let mut acc = field.zero();
        for t in p.terms() {
            let v = ev.entry(t.key.xdeg, &t.key.mono, n).expect("row within horizon");
            acc = field.add(&acc, &field.mul(&t.coeff, &v));
        }
        if !field.is_zero(&acc) {
            return VerifyReport {
                holds: false,
                rows_checked: n + 1,
                first_failure: Some(n),
            };
        }
    }
    VerifyReport {
        holds: true,
        rows_checked: rows,
        first_failure: None,
    }
}

/// Whether the separant of `p` evaluated on the data is nonzero somewhere
/// on its trusted range.
pub fn separant_nonzero<F: Field>(field: &F, p: &Poly<F::Elem>, data: &[F::Elem]) -> bool {
    let sep = p.separant(field);
    if sep.is_zero() {
        return false;
    }
    !verify_candidate(field, &sep, data).holds
}

/// Initial of a difference polynomial and whether it is linear in its top shift.
pub fn seq_initial_and_rationalizing<F: Field>(field: &F, p: &Poly<F::Elem>) -> (Poly<F::Elem>, bool) {
    p.initial(field)
}

/// Drops the first `n0` terms. For series this is `(f - prefix) / x^n0`,
/// for sequences a re-indexing; both keep the tail of the data.
pub fn shift_offset(data: &[Rational], n0: usize) -> Result<Vec<Rational>> {
    shift_slice(data, n0)
}

pub(crate) fn shift_slice<E: Clone>(data: &[E], n0: usize) -> Result<Vec<E>> {
    if n0 >= data.len() && n0 > 0 {
        return Err(Error::InvalidInput(format!(
            "offset {n0} leaves no terms out of {}",
            data.len()
        )));
    }
    Ok(data[n0..].to_vec())
}

/// Rejects data that every monomial annihilates, or too few terms.
pub(crate) fn check_data<F: Field>(field: &F, kind: PolyKind, data: &[F::Elem]) -> Result<()> {
    let needed = match kind {
        PolyKind::Differential => 2,
        PolyKind::Difference => 1,
    };
    if data.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            have: data.len(),
            detail: "too few terms to build any ansatz".into(),
        });
    }
    if data.iter().all(|v| field.is_zero(v)) {
        return Err(Error::InvalidInput(
            "all terms are zero; every monomial annihilates the data".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Rationals};
    use crate::monomial::DerivMonomial;
    use crate::poly::Key;

    fn k(e: u32, o: &[u32]) -> Key {
        Key::new(e, DerivMonomial::new(o.to_vec()))
    }

    #[test]
    fn zero_polynomial_holds() {
        let r = verify_candidate(&Rationals, &Poly::zero(PolyKind::Difference), &[int(1), int(2)]);
        assert!(r.holds);
        assert_eq!(r.rows_checked, 0);
    }

    #[test]
    fn fibonacci_check() {
        let q = Rationals;
        let mut fib = vec![int(0), int(1)];
        for i in 2..20 {
            let next = &fib[i - 1] + &fib[i - 2];
            fib.push(next);
        }
        let p = Poly::from_terms(
            &q,
            PolyKind::Difference,
            [(k(0, &[2]), int(1)), (k(0, &[1]), int(-1)), (k(0, &[0]), int(-1))],
        );
        let r = verify_candidate(&q, &p, &fib);
        assert!(r.holds);
        assert_eq!(r.rows_checked, 18);
        fib[10] += int(1);
        let r = verify_candidate(&q, &p, &fib);
        assert_eq!(r.first_failure, Some(8));
    }

    #[test]
    fn offsets() {
        let data = [int(0), int(0), int(1), int(1)];
        assert_eq!(shift_offset(&data, 2).unwrap(), vec![int(1), int(1)]);
        assert_eq!(shift_offset(&data, 0).unwrap(), data.to_vec());
        assert!(shift_offset(&data, 4).is_err());
    }

    #[test]
    fn separant_of_linear_equation_is_nonzero() {
        let q = Rationals;
        // y' - y on exp
        let mut e = vec![int(1)];
        for n in 1..8 {
            let prev = e[n - 1].clone();
            e.push(prev / int(n as i64));
        }
        let p = Poly::from_terms(
            &q,
            PolyKind::Differential,
            [(k(0, &[1]), int(1)), (k(0, &[0]), int(-1))],
        );
        assert!(verify_candidate(&q, &p, &e).holds);
        assert!(separant_nonzero(&q, &p, &e));
        // y'^2 - y^2 has separant 2y', nonzero on exp
        let p2 = Poly::from_terms(
            &q,
            PolyKind::Differential,
            [(k(0, &[1, 1]), int(1)), (k(0, &[0, 0]), int(-1))],
        );
        assert!(verify_candidate(&q, &p2, &e).holds);
        assert!(separant_nonzero(&q, &p2, &e));
    }
}
