//! Truncated power series with an exactness horizon, and the evaluation of
//! ansatz monomials on data.

use std::collections::HashMap;
use std::ops::Range;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::monomial::{DerivMonomial, Variable};

/// Coefficients `c_0..=c_L` of a series known exactly up to `x^L`.
///
/// An empty coefficient vector means no coefficient is trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TruncSeries<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Index of the last trusted coefficient, `-1` when nothing is trusted.
    pub fn exact_to(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn get(&self, n: usize) -> Option<&E> {
        self.coeffs.get(n)
    }

    pub fn truncate(&mut self, len: usize) {
        self.coeffs.truncate(len);
    }
}

pub fn series_derivative<F: Field>(field: &F, a: &TruncSeries<F::Elem>) -> Result<TruncSeries<F::Elem>> {
    if a.coeffs.len() < 2 {
        return Err(Error::EmptySeries);
    }
    Ok(TruncSeries::new(derivative_coeffs(field, &a.coeffs)))
}

fn derivative_coeffs<F: Field>(field: &F, c: &[F::Elem]) -> Vec<F::Elem> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(n, v)| field.mul_u64(v, n as u64))
        .collect()
}

pub fn series_multiply<F: Field>(
    field: &F,
    a: &TruncSeries<F::Elem>,
    b: &TruncSeries<F::Elem>,
) -> TruncSeries<F::Elem> {
    let len = a.coeffs.len().min(b.coeffs.len());
    TruncSeries::new(convolve(field, &a.coeffs, &b.coeffs, len))
}

fn convolve<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem], len: usize) -> Vec<F::Elem> {
    (0..len)
        .map(|n| {
            let mut acc = field.zero();
            for i in 0..=n {
                if field.is_zero(&a[i]) || field.is_zero(&b[n - i]) {
                    continue;
                }
                acc = field.add(&acc, &field.mul(&a[i], &b[n - i]));
            }
            acc
        })
        .collect()
}

/// Quotient `a / b` of truncated series; `b` must have an invertible constant term.
pub fn series_divide<F: Field>(
    field: &F,
    a: &TruncSeries<F::Elem>,
    b: &TruncSeries<F::Elem>,
) -> Result<TruncSeries<F::Elem>> {
    let len = a.coeffs.len().min(b.coeffs.len());
    if len == 0 {
        return Ok(TruncSeries::new(Vec::new()));
    }
    let inv0 = field
        .inv(&b.coeffs[0])
        .ok_or_else(|| Error::InvalidInput("divisor series has zero constant term".into()))?;
    let mut q: Vec<F::Elem> = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = a.coeffs[n].clone();
        for i in 1..=n {
            acc = field.sub(&acc, &field.mul(&b.coeffs[i], &q[n - i]));
        }
        q.push(field.mul(&acc, &inv0));
    }
    Ok(TruncSeries::new(q))
}

/// Evaluates ansatz columns `x^e * m(y)` on a data series or sequence.
///
/// For derivative monomials the data are series coefficients `s_0..=s_N` and
/// a column is the Cauchy product of the derivative series; its coefficient
/// `n` is trusted for `n <= N - ord(m) + e`. For shift monomials the data are
/// sequence terms and row `n` of a column is `prod_j s_{n+j}`, defined for
/// `n <= N - ord(m)`. Products are cached by monomial, built from the cached
/// product of the monomial's tail.
#[derive(Debug)]
pub struct Evaluator<F: Field> {
    field: F,
    var: Variable,
    data: Vec<F::Elem>,
    derivs: Vec<Vec<F::Elem>>,
    cache: HashMap<DerivMonomial, Vec<F::Elem>>,
}

impl<F: Field> Evaluator<F> {
    pub fn new(field: F, var: Variable, data: Vec<F::Elem>) -> Self {
        Self {
            field,
            var,
            derivs: vec![data.clone()],
            data,
            cache: HashMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    /// Index of the last data term, `N`.
    pub fn last_index(&self) -> isize {
        self.data.len() as isize - 1
    }

    /// Last trusted row of column `x^e * m`, `-1` if none.
    pub fn horizon(&self, e: u32, m: &DerivMonomial) -> isize {
        let ord = m.order().unwrap_or(0) as isize;
        let shift = match self.var {
            Variable::Derivative => e as isize,
            Variable::Shift => 0,
        };
        (self.last_index() - ord + shift).max(-1)
    }

    fn derivative(&mut self, j: usize) -> &[F::Elem] {
        while self.derivs.len() <= j {
            let next = derivative_coeffs(&self.field, self.derivs.last().unwrap());
            self.derivs.push(next);
        }
        &self.derivs[j]
    }

    /// Values of `m` at rows `0..=N - ord(m)` (without any `x` power).
    pub fn product(&mut self, m: &DerivMonomial) -> &[F::Elem] {
        if !self.cache.contains_key(m) {
            let values = self.compute_product(m);
            self.cache.insert(m.clone(), values);
        }
        &self.cache[m]
    }

    fn compute_product(&mut self, m: &DerivMonomial) -> Vec<F::Elem> {
        let len = (self.last_index() - m.order().unwrap_or(0) as isize + 1).max(0) as usize;
        if m.is_one() {
            return match self.var {
                Variable::Derivative => {
                    let mut v = vec![self.field.zero(); len];
                    if len > 0 {
                        v[0] = self.field.one();
                    }
                    v
                }
                Variable::Shift => vec![self.field.one(); len],
            };
        }
        let head = m.order().unwrap() as usize;
        let tail = m.tail();
        let tail_vals = self.product(&tail).to_vec();
        let field = self.field.clone();
        match self.var {
            Variable::Derivative => {
                let d = self.derivative(head);
                if tail.is_one() {
                    d[..len].to_vec()
                } else {
                    convolve(&field, d, &tail_vals, len)
                }
            }
            Variable::Shift => {
                let data = &self.data;
                (0..len)
                    .map(|n| {
                        let v = &data[n + head];
                        if tail.is_one() {
                            v.clone()
                        } else {
                            field.mul(v, &tail_vals[n])
                        }
                    })
                    .collect()
            }
        }
    }

    /// Coefficient of `x^n` in `x^e * m(data)`; `None` beyond the horizon.
    pub fn entry(&mut self, e: u32, m: &DerivMonomial, n: usize) -> Option<F::Elem> {
        if n as isize > self.horizon(e, m) {
            return None;
        }
        let e = match self.var {
            Variable::Derivative => e as usize,
            Variable::Shift => 0,
        };
        if n < e {
            return Some(self.field.zero());
        }
        Some(self.product(m)[n - e].clone())
    }

    /// The trusted prefix of `x^e * m(data)` as a series.
    pub fn eval_monomial(&mut self, m: &DerivMonomial, e: u32) -> TruncSeries<F::Elem> {
        let h = self.horizon(e, m);
        let coeffs = (0..=h).map(|n| self.entry(e, m, n as usize).unwrap()).collect();
        TruncSeries::new(coeffs)
    }

    /// Rows `rows` of the linear system whose columns are `x^e * m`.
    pub fn constraint_matrix(
        &mut self,
        columns: &[(u32, DerivMonomial)],
        rows: Range<usize>,
    ) -> Result<DenseMatrix<F::Elem>> {
        let mut out = DenseMatrix::zeros(&self.field, rows.len(), columns.len());
        for (t, (e, m)) in columns.iter().enumerate() {
            let h = self.horizon(*e, m);
            if rows.end as isize - 1 > h {
                return Err(Error::InsufficientData {
                    needed: rows.end,
                    have: (h + 1).max(0) as usize,
                    detail: format!("column x^{e}*{} is trusted only on {} rows", m.render(self.var), h + 1),
                });
            }
            for (i, n) in rows.clone().enumerate() {
                out.set(i, t, self.entry(*e, m, n).unwrap());
            }
        }
        Ok(out)
    }
}

/// Builds the constraint matrix for `columns` on `data` over `rows`.
pub fn build_constraint_matrix<F: Field>(
    field: &F,
    var: Variable,
    data: &[F::Elem],
    columns: &[(u32, DerivMonomial)],
    rows: Range<usize>,
) -> Result<DenseMatrix<F::Elem>> {
    Evaluator::new(field.clone(), var, data.to_vec()).constraint_matrix(columns, rows)
}

/// Series coefficient of `x^e * m(data)` for the data series, as a one-off.
pub fn eval_monomial<F: Field>(
    field: &F,
    data: &TruncSeries<F::Elem>,
    m: &DerivMonomial,
    e: u32,
) -> TruncSeries<F::Elem> {
    Evaluator::new(field.clone(), Variable::Derivative, data.coeffs.clone()).eval_monomial(m, e)
}

fn rising(field: &impl Field<Elem = crate::arith::Rational>, a: i64, n: u32) -> crate::arith::Rational {
    (0..n as i64).fold(field.one(), |acc, i| field.mul(&acc, &field.from_i64(a + i)))
}

/// Closed form for the coefficient of `x^n` in `x^i * y^(j1) * y^(j2)`
/// (or `x^i * y^(j1)` when `j2` is `None`), written with rising factorials.
/// Terms with negative indices read as zero.
pub fn rewrite_deg2_term(
    i: u32,
    j1: u32,
    j2: Option<u32>,
    n: usize,
    data: &[crate::arith::Rational],
) -> crate::arith::Rational {
    use crate::arith::Rationals;
    let q = Rationals;
    let s = |idx: i64| -> crate::arith::Rational {
        if idx < 0 {
            q.zero()
        } else {
            data.get(idx as usize)
                .cloned()
                .expect("data long enough for the requested row")
        }
    };
    let n = n as i64;
    let i = i as i64;
    match j2 {
        None => q.mul(&rising(&q, n + 1 - i, j1), &s(n + j1 as i64 - i)),
        Some(j2) => {
            let mut acc = q.zero();
            for k in 0..=(n - i) {
                let c = q.mul(&rising(&q, k + 1, j1), &rising(&q, n - i - k + 1, j2));
                let t = q.mul(&s(k + j1 as i64), &s(n - i - k + j2 as i64));
                acc = q.add(&acc, &q.mul(&c, &t));
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio, PrimeField, Rational, Rationals};
    use proptest::prelude::*;

    fn ser(v: &[Rational]) -> TruncSeries<Rational> {
        TruncSeries::new(v.to_vec())
    }

    fn exp_prefix(len: usize) -> Vec<Rational> {
        let mut out = vec![int(1)];
        for n in 1..len {
            let prev = out[n - 1].clone();
            out.push(prev / int(n as i64));
        }
        out
    }

    #[test]
    fn derivative_examples() {
        let q = Rationals;
        let d = series_derivative(&q, &ser(&[int(1), int(1), int(1), int(1)])).unwrap();
        assert_eq!(d.coeffs(), &[int(1), int(2), int(3)]);
        assert_eq!(d.exact_to(), 2);
        assert!(matches!(
            series_derivative(&q, &ser(&[int(4)])),
            Err(Error::EmptySeries)
        ));
        let e = exp_prefix(4);
        assert_eq!(series_derivative(&q, &ser(&e)).unwrap().coeffs(), &e[..3]);
    }

    #[test]
    fn multiply_examples() {
        let q = Rationals;
        let p = series_multiply(&q, &ser(&[int(1), int(1), int(1)]), &ser(&[int(1), int(-1)]));
        assert_eq!(p.coeffs(), &[int(1), int(0)]);
        assert_eq!(p.exact_to(), 1);
        let a = ser(&[ratio(1, 3), int(2), int(5)]);
        assert_eq!(series_multiply(&q, &a, &ser(&[int(1), int(0), int(0), int(0)])), a);
        // exp * exp = exp(2x), coefficients 2^n / n!
        let e = ser(&exp_prefix(8));
        let sq = series_multiply(&q, &e, &e);
        for (n, c) in sq.coeffs().iter().enumerate() {
            let mut fact = int(1);
            for i in 1..=n {
                fact *= int(i as i64);
            }
            assert_eq!(*c, int(1i64 << n) / fact);
        }
    }

    #[test]
    fn divide_inverts_multiply() {
        let q = Rationals;
        let a = ser(&[int(3), ratio(1, 2), int(-7), int(4), ratio(2, 9)]);
        let b = ser(&[int(2), int(1), int(0), ratio(-5, 3), int(1)]);
        let prod = series_multiply(&q, &a, &b);
        assert_eq!(series_divide(&q, &prod, &b).unwrap(), a);
    }

    #[test]
    fn monomial_evaluation() {
        let q = Rationals;
        let geo = ser(&vec![int(1); 8]);
        let d = eval_monomial(&q, &geo, &DerivMonomial::single(1), 0);
        let expected: Vec<_> = (1..=7).map(int).collect();
        assert_eq!(d.coeffs(), &expected[..]);

        let e = ser(&exp_prefix(6));
        let yy = eval_monomial(&q, &e, &DerivMonomial::new(vec![1, 0]), 0);
        assert_eq!(yy, series_multiply(&q, &series_derivative(&q, &e).unwrap(), &e));

        let data = ser(&exp_prefix(6));
        assert_eq!(eval_monomial(&q, &data, &DerivMonomial::single(2), 0).exact_to(), 3);
        let shifted = eval_monomial(&q, &data, &DerivMonomial::single(2), 2);
        assert_eq!(shifted.exact_to(), 5);
        assert_eq!(shifted.coeffs()[0], int(0));
        assert_eq!(shifted.coeffs()[2], int(1));
    }

    #[test]
    fn shift_evaluation() {
        let f = PrimeField::new(101).unwrap();
        let data: Vec<u64> = vec![2, 3, 5, 7, 11];
        let mut ev = Evaluator::new(f, Variable::Shift, data);
        let m = DerivMonomial::new(vec![1, 0, 0]);
        assert_eq!(ev.product(&m), &[12, 45, 175 % 101, 539 % 101]);
        assert_eq!(ev.horizon(0, &m), 3);
        assert_eq!(ev.product(&DerivMonomial::one()), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn constraint_matrix_shapes() {
        let q = Rationals;
        let data: Vec<Rational> = (0..6).map(int).collect();
        let cols = vec![(0, DerivMonomial::single(0))];
        let m = build_constraint_matrix(&q, Variable::Derivative, &data, &cols, 0..6).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 1));
        for n in 0..6 {
            assert_eq!(m.get(n, 0), &int(n as i64));
        }
        let empty = build_constraint_matrix(&q, Variable::Derivative, &data, &cols, 0..0).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 1));
        let cols = vec![(0, DerivMonomial::single(2))];
        assert!(matches!(
            build_constraint_matrix(&q, Variable::Derivative, &data, &cols, 0..5),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn rewrite_rule_examples() {
        let data: Vec<Rational> = [3, 1, 4, 1, 5, 9, 2, 6].iter().map(|&v| int(v)).collect();
        for n in 0..4 {
            let ni = n as i64;
            assert_eq!(
                rewrite_deg2_term(0, 2, None, n, &data),
                int((ni + 1) * (ni + 2)) * data[n + 2].clone()
            );
            assert_eq!(
                rewrite_deg2_term(1, 2, None, n, &data),
                if n == 0 {
                    int(0)
                } else {
                    int(ni * (ni + 1)) * data[n + 1].clone()
                }
            );
            let direct: Rational = (0..=n)
                .map(|k| int(((k + 1) * (n - k + 1)) as i64) * data[k + 1].clone() * data[n - k + 1].clone())
                .sum();
            assert_eq!(rewrite_deg2_term(0, 1, Some(1), n, &data), direct);
        }
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn rewrite_rule_matches_series(data in prop::collection::vec(rational(), 13)) {
            let q = Rationals;
            let s = TruncSeries::new(data.clone());
            for i in 0..=2u32 {
                for j1 in 0..=3u32 {
                    let single = eval_monomial(&q, &s, &DerivMonomial::single(j1), i);
                    for n in 0..=single.exact_to() as usize {
                        prop_assert_eq!(&rewrite_deg2_term(i, j1, None, n, &data), &single.coeffs()[n]);
                    }
                    for j2 in 0..=3u32 {
                        let pair = eval_monomial(&q, &s, &DerivMonomial::new(vec![j1, j2]), i);
                        for n in 0..=pair.exact_to() as usize {
                            prop_assert_eq!(&rewrite_deg2_term(i, j1, Some(j2), n, &data), &pair.coeffs()[n]);
                        }
                    }
                }
            }
        }

        #[test]
        fn horizon_is_safe(data in prop::collection::vec(rational(), 14), orders in prop::collection::vec(0u32..4, 1..4), e in 0u32..3) {
            let q = Rationals;
            let m = DerivMonomial::new(orders);
            let short = eval_monomial(&q, &TruncSeries::new(data[..10].to_vec()), &m, e);
            let long = eval_monomial(&q, &TruncSeries::new(data.clone()), &m, e);
            prop_assert!(short.coeffs().len() <= long.coeffs().len());
            prop_assert_eq!(short.coeffs(), &long.coeffs()[..short.coeffs().len()]);
        }

        #[test]
        fn multiply_commutes_and_associates(a in prop::collection::vec(rational(), 1..8),
                                            b in prop::collection::vec(rational(), 1..8),
                                            c in prop::collection::vec(rational(), 1..8)) {
            let q = Rationals;
            let (a, b, c) = (TruncSeries::new(a), TruncSeries::new(b), TruncSeries::new(c));
            prop_assert_eq!(series_multiply(&q, &a, &b), series_multiply(&q, &b, &a));
            prop_assert_eq!(
                series_multiply(&q, &series_multiply(&q, &a, &b), &c),
                series_multiply(&q, &a, &series_multiply(&q, &b, &c))
            );
        }
    }
}
