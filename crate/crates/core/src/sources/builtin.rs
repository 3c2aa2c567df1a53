use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::TermList;
use crate::arith::{int, ratio, Rational, Rationals};
use crate::error::{Error, Result};
use crate::series::{series_divide, TruncSeries};

/// Names accepted by [`builtin_terms`], with a one-line description each.
pub const BUILTINS: &[(&str, &str)] = &[
    ("catalan", "Catalan numbers C(n)"),
    ("fibonacci", "Fibonacci numbers F(n), F(0) = 0"),
    ("catalan_over_fib", "C(n)/F(n) from n = 1"),
    ("fib_pow2", "F(2^n)"),
    ("catalan3_partial_sums", "sum of C(3k) for k <= n"),
    ("catalan_multisection:<d>", "C(d*n), e.g. catalan_multisection:4"),
    ("odd_indexed_primes", "3, 7, 13, 19, 29, ... (every other prime)"),
    ("labelled_rooted_trees", "n^(n-1)/n!, the coefficients of -W(-x)"),
    ("zeta_even_scaled", "zeta(2n+2)/pi^(2n+2)"),
    ("arctan_over_sincos", "coefficients of arctan(x)/(sin(x) + cos(x))"),
];

/// The first `count` terms of a named sequence.
pub fn builtin_terms(name: &str, count: usize) -> Result<TermList> {
    if count == 0 {
        return Err(Error::InvalidInput("term count must be at least 1".into()));
    }
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (name, None),
    };
    let mut offset = 0;
    let terms = match (base, param) {
        ("catalan", None) => catalan(count),
        ("fibonacci", None) => ints(fibonacci(count)),
        ("catalan_over_fib", None) => {
            offset = 1;
            let c = catalan(count + 1);
            let f = fibonacci(count + 1);
            (1..=count)
                .map(|n| &c[n] / Rational::from_integer(f[n].clone()))
                .collect()
        }
        ("fib_pow2", None) => ints(fib_pow2(count)),
        ("catalan3_partial_sums", None) => {
            let c = catalan(3 * count);
            let mut acc = Rational::zero();
            (0..count)
                .map(|n| {
                    acc += &c[3 * n];
                    acc.clone()
                })
                .collect()
        }
        ("catalan_multisection", Some(p)) => {
            let d: usize = p
                .parse()
                .ok()
                .filter(|&d| d >= 1)
                .ok_or_else(|| Error::InvalidInput(format!("bad multisection step `{p}`")))?;
            let c = catalan(d * (count - 1) + 1);
            (0..count).map(|n| c[d * n].clone()).collect()
        }
        ("odd_indexed_primes", None) => odd_indexed_primes(count).into_iter().map(|p| int(p as i64)).collect(),
        ("labelled_rooted_trees", None) => labelled_rooted_trees(count),
        ("zeta_even_scaled", None) => zeta_even_scaled(count),
        ("arctan_over_sincos", None) => arctan_over_sincos(count),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    Ok(TermList { offset, terms })
}

fn ints(v: Vec<BigInt>) -> Vec<Rational> {
    v.into_iter().map(Rational::from_integer).collect()
}

fn catalan(count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut c = BigInt::one();
    for n in 0..count {
        out.push(Rational::from_integer(c.clone()));
        c = c * (4 * n + 2) / (n + 2);
    }
    out
}

fn fibonacci(count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..count {
        out.push(a.clone());
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    out
}

/// `F(2^n)` by the doubling identities, tracking `(F(m), F(m+1))` for `m = 2^n`.
fn fib_pow2(count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let (mut f, mut g) = (BigInt::one(), BigInt::one());
    for _ in 0..count {
        out.push(f.clone());
        let f2 = &f * (&g * 2 - &f);
        let g2 = &f * &f + &g * &g;
        f = f2;
        g = g2;
    }
    out
}

fn odd_indexed_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::new();
    let mut n = 2u64;
    while primes.len() < 2 * count {
        if primes
            .iter()
            .take_while(|&&p| p * p <= n)
            .all(|&p| !n.is_multiple_of(p))
        {
            primes.push(n);
        }
        n += 1;
    }
    primes.into_iter().skip(1).step_by(2).collect()
}

fn labelled_rooted_trees(count: usize) -> Vec<Rational> {
    let mut u = vec![int(0), int(1)];
    while u.len() < count {
        let n = u.len() - 1;
        let mut acc = Rational::zero();
        for k in 0..n {
            acc += int(k as i64 + 1) * &u[k + 1] * &u[n - k];
        }
        u.push(acc / int(n as i64));
    }
    u.truncate(count);
    u
}

/// Bernoulli numbers `B_0..B_m` with `B_1 = -1/2`.
fn bernoulli(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![int(1)];
    for n in 1..=m {
        // sum_{j<=n} C(n+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * (n + 1 - j) / (j + 1);
        }
        b.push(-acc / Rational::from_integer(binom));
    }
    b
}

fn zeta_even_scaled(count: usize) -> Vec<Rational> {
    let b = bernoulli(2 * count);
    let mut fact = BigInt::one();
    let mut facts = vec![BigInt::one()];
    for i in 1..=2 * count {
        fact *= i;
        facts.push(fact.clone());
    }
    (0..count)
        .map(|n| {
            let m = 2 * n + 2;
            let pow2 = BigInt::one() << (2 * n + 1);
            b[m].abs() * Rational::from_integer(pow2) / Rational::from_integer(facts[m].clone())
        })
        .collect()
}

fn arctan_over_sincos(count: usize) -> Vec<Rational> {
    // arctan: s(n+2) = -n s(n) / (n+2), s0 = 0, s1 = 1
    let mut at = vec![int(0), int(1)];
    // sin + cos: s(n+2) = -s(n) / ((n+1)(n+2)), s0 = s1 = 1
    let mut sc = vec![int(1), int(1)];
    for n in 0..count {
        let a = -&at[n] * ratio(n as i64, n as i64 + 2);
        at.push(a);
        let s = -&sc[n] / int(((n + 1) * (n + 2)) as i64);
        sc.push(s);
    }
    at.truncate(count);
    sc.truncate(count);
    series_divide(&Rationals, &TruncSeries::new(at), &TruncSeries::new(sc))
        .expect("sin + cos has unit constant term")
        .into_coeffs()
}
