use crate::arith::{reduce_all, Field, Rational, Rationals};
use crate::error::{Error, Result};
use crate::monomial::{block_bounds, delta_prefix, DerivMonomial, Variable};
use crate::poly::{Key, PolyKind};
use crate::series::Evaluator;

use super::solve::{available_rows, solve_ansatz};
use super::verify::{check_data, shift_slice};
use super::{max_admissible_order, GuessConfig, GuessResult};

/// Guesses a polynomial difference equation for the sequence, over the rationals.
pub fn guess_sequence(data: &[Rational], cfg: &GuessConfig) -> Result<Option<GuessResult<Rational>>> {
    guess_sequence_in(&Rationals, &reduce_all(&Rationals, data)?, cfg)
}

/// Grows the ansatz one shift monomial at a time, starting at the top of the
/// order-`r_min` block. Past the admissible order the search goes on for as
/// long as the trusted windows still outnumber the unknowns.
pub fn guess_sequence_in<F: Field>(
    field: &F,
    data: &[F::Elem],
    cfg: &GuessConfig,
) -> Result<Option<GuessResult<F::Elem>>> {
    cfg.validate()?;
    if cfg.kind != PolyKind::Difference {
        return Err(Error::InvalidInput(
            "configuration is not for difference equations".into(),
        ));
    }
    let data = shift_slice(data, cfg.offset)?;
    check_data(field, cfg.kind, &data)?;
    let n_last = data.len() - 1;
    if max_admissible_order(cfg.kind, n_last, cfg.k, 0).is_none() {
        return Err(Error::InsufficientData {
            needed: 1,
            have: data.len(),
            detail: "no order is admissible".into(),
        });
    }
    let mut ev = Evaluator::new(field.clone(), Variable::Shift, data);
    let mut r_theta = block_bounds(cfg.k, cfg.r_min).1;
    loop {
        let monos = delta_prefix(cfg.k, r_theta + 1);
        let mut columns: Vec<Key> = Vec::with_capacity(monos.len() + 1);
        if cfg.affine {
            columns.push(Key::new(0, DerivMonomial::one()));
        }
        columns.extend(monos.iter().map(|m| Key::new(0, m.clone())));
        let avail = available_rows(&ev, &columns);
        if columns.len() > avail {
            return Ok(None);
        }
        let solve_rows = (columns.len() + 1).min(avail);
        if let Some(s) = solve_ansatz(&mut ev, cfg.kind, &columns, solve_rows, avail)? {
            return Ok(Some(GuessResult {
                basis: s.basis,
                order: monos.last().and_then(|m| m.order()).unwrap_or(0),
                delta_order: r_theta,
                degrees: vec![0; monos.len()],
                rows_solved: s.rows_solved,
                rows_verified: s.rows_verified,
                field: field.descriptor(),
            }));
        }
        r_theta += 1;
    }
}
