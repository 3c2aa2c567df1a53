//! Guessing modulo word-size primes, and lifting the results back to the rationals.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{crt_combine, rational_reconstruct, Field, PrimeField, Rational, Rationals};
use crate::error::{Error, Result};
use crate::guess::shift_offset;
use crate::guess::{guess_function_in, guess_sequence_in, verify_candidate, GuessConfig, GuessResult};
use crate::monomial::{DerivMonomial, Variable};
use crate::poly::{Key, Poly, PolyKind};
use crate::series::Evaluator;

/// Keys carrying a nonzero coefficient, in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Support {
    keys: Vec<Key>,
}

impl Support {
    pub fn new(mut keys: Vec<Key>) -> Self {
        keys.sort();
        keys.dedup();
        Self { keys }
    }

    pub fn of_poly<E: Clone>(p: &Poly<E>) -> Self {
        Self::new(p.keys().cloned().collect())
    }

    /// Union of the supports of all basis elements.
    pub fn of_basis<E: Clone>(basis: &[Poly<E>]) -> Self {
        Self::new(basis.iter().flat_map(|p| p.keys().cloned()).collect())
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn render(&self, var: Variable) -> String {
        let parts: Vec<String> = self
            .keys
            .iter()
            .map(|k| match (k.xdeg, var) {
                (0, _) | (_, Variable::Shift) => k.mono.render(var),
                (e, _) => format!("x^{e}*{}", k.mono.render(var)),
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Variable::Derivative))
    }
}

/// Result of one guess over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRunReport {
    pub prime: u64,
    pub result: Option<GuessResult<u64>>,
    pub support: Support,
    /// Key whose coefficient is one in every basis element with that key on top.
    pub pivot: Option<Key>,
}

/// Runs the guess matching `cfg.kind` on the data reduced modulo `p`.
pub fn guess_modular(data: &[Rational], p: u64, cfg: &GuessConfig) -> Result<PrimeRunReport> {
    let field = PrimeField::new(p)?;
    let reduced = data
        .iter()
        .map(|q| field.from_rational(q))
        .collect::<Result<Vec<_>>>()?;
    let result = match cfg.kind {
        PolyKind::Differential => guess_function_in(&field, &reduced, cfg)?,
        PolyKind::Difference => guess_sequence_in(&field, &reduced, cfg)?,
    };
    let (support, pivot) = match &result {
        Some(r) => (
            Support::of_basis(&r.basis),
            r.basis.first().and_then(|b| b.pivot_key().cloned()),
        ),
        None => (Support::default(), None),
    };
    Ok(PrimeRunReport {
        prime: p,
        result,
        support,
        pivot,
    })
}

/// Guesses modulo every prime, checks that all runs found a one-dimensional
/// solution with the same support, and lifts the monic modular equations by
/// Chinese remaindering and rational reconstruction. The lifted equation is
/// verified on the rational data before it is returned.
pub fn multi_prime_reconstruct(data: &[Rational], primes: &[u64], cfg: &GuessConfig) -> Result<Poly<Rational>> {
    if primes.len() < 2 {
        return Err(Error::InvalidInput("reconstruction needs at least two primes".into()));
    }
    let reports: Vec<PrimeRunReport> = primes
        .par_iter()
        .map(|&p| guess_modular(data, p, cfg))
        .collect::<Result<_>>()?;
    reconstruct_from_reports(data, &reports, cfg)
}

/// The combining half of [`multi_prime_reconstruct`], for reports computed elsewhere.
pub fn reconstruct_from_reports(
    data: &[Rational],
    reports: &[PrimeRunReport],
    cfg: &GuessConfig,
) -> Result<Poly<Rational>> {
    let var = cfg.kind.variable();
    let describe = || {
        reports
            .iter()
            .map(|r| {
                let dim = r.result.as_ref().map_or(0, |g| g.basis.len());
                format!("p={} dim={} support={}", r.prime, dim, r.support.render(var))
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    for r in reports {
        let dim = r.result.as_ref().map_or(0, |g| g.basis.len());
        if dim != 1 {
            return Err(Error::SupportMismatch(format!(
                "expected a one-dimensional solution modulo every prime: {}",
                describe()
            )));
        }
    }
    if reports.windows(2).any(|w| w[0].support != w[1].support) {
        return Err(Error::SupportMismatch(describe()));
    }
    let polys: Vec<(u64, Poly<u64>)> = reports
        .iter()
        .map(|r| {
            let f = PrimeField::new(r.prime).expect("prime was validated");
            (r.prime, r.result.as_ref().unwrap().basis[0].monic(&f))
        })
        .collect();
    let mut terms = Vec::with_capacity(reports[0].support.len());
    for key in reports[0].support.keys() {
        let residues: Vec<(BigInt, BigInt)> = polys
            .iter()
            .map(|(p, poly)| {
                (
                    BigInt::from(*poly.coeff(key).expect("shared support")),
                    BigInt::from(*p),
                )
            })
            .collect();
        let (a, m) = crt_combine(&residues)?;
        terms.push((key.clone(), rational_reconstruct(&a, &m)?));
    }
    let q = Rationals;
    let poly = Poly::from_terms(&q, cfg.kind, terms).normalized(&q);
    let shifted = shift_offset(data, cfg.offset)?;
    let report = verify_candidate(&q, &poly, &shifted);
    if !report.holds {
        return Err(Error::VerificationFailed(format!(
            "reconstructed equation fails at row {}; try more or different primes",
            report.first_failure.unwrap_or(0)
        )));
    }
    Ok(poly)
}

/// Solves over the rationals for an equation supported exactly on `support`.
///
/// The first `row_limit` trusted rows (all of them by default) form the
/// system; a nontrivial kernel is then recomputed on every trusted row.
pub fn support_refit(
    data: &[Rational],
    support: &Support,
    cfg: &GuessConfig,
    row_limit: Option<usize>,
) -> Result<GuessResult<Rational>> {
    let q = Rationals;
    let shifted = shift_offset(data, cfg.offset)?;
    let mut ev = Evaluator::new(q, cfg.kind.variable(), shifted);
    let columns = support.keys().to_vec();
    let avail = columns
        .iter()
        .map(|k| ev.horizon(k.xdeg, &k.mono) + 1)
        .min()
        .unwrap_or(0)
        .max(0) as usize;
    let solve_rows = row_limit.unwrap_or(avail).min(avail);
    if solve_rows < columns.len() {
        return Err(Error::InsufficientData {
            needed: columns.len(),
            have: solve_rows,
            detail: format!("{} rows for {} unknowns", solve_rows, columns.len()),
        });
    }
    let cols: Vec<(u32, DerivMonomial)> = columns.iter().map(|k| (k.xdeg, k.mono.clone())).collect();
    let full = ev.constraint_matrix(&cols, 0..avail)?;
    let mut kernel = q.nullspace(&full.top_rows(solve_rows));
    if !kernel.is_empty() && solve_rows < avail {
        kernel = q.nullspace(&full);
    }
    let basis: Vec<Poly<Rational>> = kernel
        .vectors
        .iter()
        .map(|v| Poly::from_terms(&q, cfg.kind, columns.iter().cloned().zip(v.iter().cloned())).normalized(&q))
        .filter(|p| verify_candidate(&q, p, ev.data()).holds)
        .collect();
    let mut monos: Vec<&DerivMonomial> = columns.iter().map(|k| &k.mono).collect();
    monos.dedup();
    let degrees = monos
        .iter()
        .map(|m| {
            columns
                .iter()
                .filter(|k| &k.mono == *m)
                .map(|k| k.xdeg as usize)
                .max()
                .unwrap_or(0)
        })
        .collect();
    Ok(GuessResult {
        basis,
        order: monos.iter().filter_map(|m| m.order()).max().unwrap_or(0),
        delta_order: monos.len().saturating_sub(1),
        degrees,
        rows_solved: solve_rows,
        rows_verified: avail,
        field: q.descriptor(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::guess::guess_sequence;

    fn fibonacci(n: usize) -> Vec<Rational> {
        let mut f = vec![int(0), int(1)];
        while f.len() < n {
            let next = &f[f.len() - 1] + &f[f.len() - 2];
            f.push(next);
        }
        f
    }

    #[test]
    fn fibonacci_through_two_primes() {
        let data = fibonacci(20);
        let cfg = GuessConfig::sequence(1);
        let lifted = multi_prime_reconstruct(&data, &[101, 103], &cfg).unwrap();
        let direct = guess_sequence(&data, &cfg).unwrap().unwrap();
        assert_eq!(lifted, direct.basis[0]);
        assert_eq!(lifted.render(&Rationals), "-s(n) - s(n+1) + s(n+2)");
    }

    #[test]
    fn single_prime_is_rejected() {
        let cfg = GuessConfig::sequence(1);
        assert!(matches!(
            multi_prime_reconstruct(&fibonacci(20), &[101], &cfg),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn catalan_support_mod_7() {
        let mut c = vec![int(1)];
        for n in 0..30 {
            let next = c[n].clone() * int(4 * n as i64 + 2) / int(n as i64 + 2);
            c.push(next);
        }
        let report = guess_modular(&c, 7, &GuessConfig::sequence(2)).unwrap();
        let keys: Vec<Key> = [[2u32, 0], [2, 1], [1, 0], [1, 1]]
            .iter()
            .map(|o| Key::new(0, DerivMonomial::new(o.to_vec())))
            .collect();
        for k in &keys {
            assert!(report.support.keys().contains(k), "missing {}", k.mono);
        }
    }

    #[test]
    fn unlucky_prime() {
        let data = vec![int(1), Rational::new(1.into(), 7.into()), int(3)];
        assert!(matches!(
            guess_modular(&data, 7, &GuessConfig::sequence(1)),
            Err(Error::UnluckyPrime { prime: 7, .. })
        ));
    }

    #[test]
    fn refit_single_monomial() {
        let data: Vec<Rational> = (0..10).map(|n| int(1 << n)).collect();
        let support = Support::new(vec![
            Key::new(0, DerivMonomial::single(0)),
            Key::new(0, DerivMonomial::single(1)),
        ]);
        let res = support_refit(&data, &support, &GuessConfig::sequence(1), None).unwrap();
        assert_eq!(res.basis.len(), 1);
        assert_eq!(res.basis[0].render(&Rationals), "-2*s(n) + s(n+1)");
        let too_few = support_refit(&data, &support, &GuessConfig::sequence(1), Some(1));
        assert!(matches!(too_few, Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn refit_single_vanishing_monomial() {
        let data = vec![int(1), int(0), int(0), int(0), int(0)];
        let support = Support::new(vec![Key::new(0, DerivMonomial::single(1))]);
        let res = support_refit(&data, &support, &GuessConfig::sequence(1), None).unwrap();
        assert_eq!(res.basis.len(), 1);
        assert_eq!(res.basis[0].render(&Rationals), "s(n+1)");
    }
}
