use crate::arith::{reduce_all, Field, Rational, Rationals};
use crate::error::{Error, Result};
use crate::monomial::{block_bounds, delta_prefix, DerivMonomial, Variable};
use crate::poly::{Key, PolyKind};
use crate::series::Evaluator;

use super::solve::{available_rows, solve_ansatz, Solved};
use super::verify::{check_data, shift_slice};
use super::{bounded_tuples, max_admissible_order, min_terms, GuessConfig, GuessResult};

/// Guesses a differential equation for the series with the given
/// coefficients, over the rationals.
pub fn guess_function(data: &[Rational], cfg: &GuessConfig) -> Result<Option<GuessResult<Rational>>> {
    guess_function_in(&Rationals, &reduce_all(&Rationals, data)?, cfg)
}

/// Runs the order-`r` degree search directly, over the rationals.
pub fn guess_function_fixed_order(
    data: &[Rational],
    cfg: &GuessConfig,
    r: usize,
) -> Result<Option<GuessResult<Rational>>> {
    guess_function_fixed_order_in(&Rationals, &reduce_all(&Rationals, data)?, cfg, r)
}

fn expect_function(cfg: &GuessConfig) -> Result<()> {
    cfg.validate()?;
    if cfg.kind != PolyKind::Differential {
        return Err(Error::InvalidInput(
            "configuration is not for differential equations".into(),
        ));
    }
    Ok(())
}

/// Main search: grows the ansatz one monomial at a time, all coefficient
/// degrees equal to `d`, while the system stays overdetermined.
pub fn guess_function_in<F: Field>(
    field: &F,
    data: &[F::Elem],
    cfg: &GuessConfig,
) -> Result<Option<GuessResult<F::Elem>>> {
    expect_function(cfg)?;
    let data = shift_slice(data, cfg.offset)?;
    check_data(field, cfg.kind, &data)?;
    let n_last = data.len() - 1;
    let r_max = max_admissible_order(cfg.kind, n_last, cfg.k, cfg.d);
    if r_max.is_none() && !cfg.all_poly_deg {
        return Err(Error::InsufficientData {
            needed: min_terms(cfg.kind, cfg.d),
            have: data.len(),
            detail: format!("no order is admissible with k = {} and d = {}", cfg.k, cfg.d),
        });
    }
    let mut ev = Evaluator::new(field.clone(), Variable::Derivative, data);
    if let Some(r_max) = r_max {
        let first = block_bounds(cfg.k, cfg.r_min).1;
        let last = block_bounds(cfg.k, r_max).0;
        for r_delta in first..=last {
            let monos = delta_prefix(cfg.k, r_delta + 1);
            let columns = uniform_columns(&monos, cfg.d);
            let avail = available_rows(&ev, &columns);
            debug_assert!(avail >= columns.len(), "admissible ansatz is underdetermined");
            let solve_rows = (columns.len() + 1).min(avail);
            if let Some(s) = solve_ansatz(&mut ev, cfg.kind, &columns, solve_rows, avail)? {
                return Ok(Some(result(field, s, &monos, vec![cfg.d; monos.len()])));
            }
        }
    }
    if !cfg.all_poly_deg {
        return Ok(None);
    }
    let r = cfg.r_min.max(r_max.unwrap_or(0));
    fixed_order(field, &mut ev, cfg, r)
}

/// Degree search at a fixed order `r`.
///
/// First the uniform ansatz keeps growing through the order-`r` block until
/// it has more unknowns than trusted rows; then every distribution of
/// coefficient degrees that makes that last ansatz square is tried.
pub fn guess_function_fixed_order_in<F: Field>(
    field: &F,
    data: &[F::Elem],
    cfg: &GuessConfig,
    r: usize,
) -> Result<Option<GuessResult<F::Elem>>> {
    expect_function(cfg)?;
    let data = shift_slice(data, cfg.offset)?;
    check_data(field, cfg.kind, &data)?;
    let mut ev = Evaluator::new(field.clone(), Variable::Derivative, data);
    fixed_order(field, &mut ev, cfg, r)
}

fn fixed_order<F: Field>(
    field: &F,
    ev: &mut Evaluator<F>,
    cfg: &GuessConfig,
    r: usize,
) -> Result<Option<GuessResult<F::Elem>>> {
    let n_last = ev.last_index();
    let (lo, _) = block_bounds(cfg.k, r);
    let (hi, _) = block_bounds(cfg.k, r + 1);
    let mut star = None;
    for r_delta in lo..=hi {
        let monos = delta_prefix(cfg.k, r_delta + 1);
        let columns = uniform_columns(&monos, cfg.d);
        let avail = available_rows(ev, &columns);
        if columns.len() > avail {
            star = Some(monos);
            break;
        }
        let solve_rows = (columns.len() + 1).min(avail);
        if let Some(s) = solve_ansatz(ev, cfg.kind, &columns, solve_rows, avail)? {
            return Ok(Some(result(field, s, &monos, vec![cfg.d; monos.len()])));
        }
    }
    let Some(monos) = star else {
        return Ok(None);
    };
    let top_order = monos.last().and_then(|m| m.order()).unwrap_or(0) as isize;
    let t = cfg.presume_rows;
    let rows = n_last - top_order + 1 + t as isize;
    if rows <= 0 {
        return Err(Error::InsufficientData {
            needed: (top_order + 1) as usize,
            have: (n_last + 1) as usize,
            detail: format!("order {top_order} leaves no trusted rows"),
        });
    }
    let rows = rows as usize;
    // lowest x power whose coefficient is still known on all `rows` rows
    let lows: Vec<usize> = monos
        .iter()
        .map(|m| t.saturating_sub((top_order - m.order().unwrap_or(0) as isize) as usize))
        .collect();
    let tuples = bounded_tuples(cfg.d, &lows, rows);
    if tuples.is_empty() {
        return Err(Error::InsufficientData {
            needed: rows,
            have: (n_last + 1) as usize,
            detail: "no distribution of coefficient degrees gives a square system".into(),
        });
    }
    for tuple in tuples {
        let columns: Vec<Key> = {
            let mut c: Vec<Key> = monos
                .iter()
                .zip(&tuple)
                .zip(&lows)
                .flat_map(|((m, &dj), &l)| (l..=dj).map(move |e| Key::new(e as u32, m.clone())))
                .collect();
            c.sort();
            c
        };
        debug_assert_eq!(columns.len(), rows);
        let avail = available_rows(ev, &columns);
        if avail < rows {
            continue;
        }
        if let Some(s) = solve_ansatz(ev, cfg.kind, &columns, rows, rows)? {
            return Ok(Some(result(field, s, &monos, tuple)));
        }
    }
    Ok(None)
}

fn uniform_columns(monos: &[DerivMonomial], d: usize) -> Vec<Key> {
    let mut cols: Vec<Key> = monos
        .iter()
        .flat_map(|m| (0..=d as u32).map(move |e| Key::new(e, m.clone())))
        .collect();
    cols.sort();
    cols
}

fn result<F: Field>(
    field: &F,
    s: Solved<F::Elem>,
    monos: &[DerivMonomial],
    degrees: Vec<usize>,
) -> GuessResult<F::Elem> {
    GuessResult {
        basis: s.basis,
        order: monos.last().and_then(|m| m.order()).unwrap_or(0),
        delta_order: monos.len() - 1,
        degrees,
        rows_solved: s.rows_solved,
        rows_verified: s.rows_verified,
        field: field.descriptor(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, PrimeField};
    use crate::poly::Poly;

    fn exp_terms(n: usize) -> Vec<Rational> {
        let mut out = vec![int(1)];
        for i in 1..n {
            let prev = out[i - 1].clone();
            out.push(prev / int(i as i64));
        }
        out
    }

    #[test]
    fn exponential_is_first_order_linear() {
        let res = guess_function(&exp_terms(12), &GuessConfig::function(1, 0))
            .unwrap()
            .unwrap();
        assert_eq!(res.basis.len(), 1);
        assert_eq!(res.basis[0].monic(&Rationals).render(&Rationals), "-y + y'");
        assert_eq!(res.order, 1);
    }

    #[test]
    fn geometric_series_mod_p() {
        // 1/(1-x): (1-x) y' - y = 0
        let f = PrimeField::new(101).unwrap();
        let data = vec![1u64; 10];
        let res = guess_function_in(&f, &data, &GuessConfig::function(1, 1))
            .unwrap()
            .unwrap();
        let p = res.basis[0].monic(&f);
        let expected = Poly::from_terms(
            &f,
            PolyKind::Differential,
            [
                (Key::new(0, DerivMonomial::single(0)), 100),
                (Key::new(0, DerivMonomial::single(1)), 1),
                (Key::new(1, DerivMonomial::single(1)), 100),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn errors_and_none() {
        let cfg = GuessConfig::function(2, 1);
        assert!(matches!(
            guess_function(&[int(1), int(2)], &cfg),
            Err(Error::InsufficientData { .. })
        ));
        assert!(guess_function(&vec![int(0); 10], &cfg).is_err());
        assert!(guess_function(&exp_terms(5), &GuessConfig::sequence(1)).is_err());
    }

    #[test]
    fn fixed_order_zero_degree_tuple() {
        // with d = 0 only the all-zero tuple exists
        let res = guess_function_fixed_order(&exp_terms(6), &GuessConfig::function(1, 0), 1).unwrap();
        assert!(res.is_some());
    }
}
