//! Dense kernels over prime fields and the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::prime_field::{inv_mod, mul_mod, reduce_bigint};
use crate::arith::{crt_combine, prime_ladder, rational_reconstruct, Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> DenseMatrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    /// Panics when rows have different lengths.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            entries.extend(r);
        }
        Self { rows: n, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// The first `n` rows.
    pub fn top_rows(&self, n: usize) -> Self {
        let n = n.min(self.rows);
        Self {
            rows: n,
            cols: self.cols,
            entries: self.entries[..n * self.cols].to_vec(),
        }
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            entries.extend(cols.iter().map(|&c| self.get(r, c).clone()));
        }
        Self {
            rows: self.rows,
            cols: cols.len(),
            entries,
        }
    }

    pub fn map<T, G: FnMut(&E) -> T>(&self, f: G) -> DenseMatrix<T> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// Kernel basis in reduced form: vector `i` has a one at `free_columns[i]`
/// and zeros at every other free column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullspaceBasis<E> {
    pub vectors: Vec<Vec<E>>,
    pub free_columns: Vec<usize>,
}

impl<E> NullspaceBasis<E> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// `M * v` over the field.
pub fn mat_vec<F: Field>(field: &F, m: &DenseMatrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..m.rows())
        .map(|r| {
            m.row(r).iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                if field.is_zero(a) || field.is_zero(b) {
                    acc
                } else {
                    field.add(&acc, &field.mul(a, b))
                }
            })
        })
        .collect()
}

/// Reduced row echelon form with first-nonzero pivoting; returns the pivot
/// column of each nonzero row.
fn rref_in_place<F: Field>(field: &F, m: &mut DenseMatrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(src) = (pr..rows).find(|&r| !field.is_zero(m.get(r, c))) else {
            continue;
        };
        if src != pr {
            for j in 0..cols {
                m.entries.swap(src * cols + j, pr * cols + j);
            }
        }
        let inv = field.inv(m.get(pr, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = field.mul(m.get(pr, j), &inv);
            m.set(pr, j, v);
        }
        for r in 0..rows {
            if r == pr || field.is_zero(m.get(r, c)) {
                continue;
            }
            let f = m.get(r, c).clone();
            for j in c..cols {
                if field.is_zero(m.get(pr, j)) {
                    continue;
                }
                let v = field.sub(m.get(r, j), &field.mul(&f, m.get(pr, j)));
                m.set(r, j, v);
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

fn basis_from_rref<E: Clone>(
    cols: usize,
    pivots: &[usize],
    pivot_row_entry: impl Fn(usize, usize) -> E,
    zero: E,
    one: E,
    neg: impl Fn(&E) -> E,
) -> NullspaceBasis<E> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); cols];
            v[f] = one.clone();
            for (i, &p) in pivots.iter().enumerate() {
                if p < f {
                    v[p] = neg(&pivot_row_entry(i, f));
                }
            }
            v
        })
        .collect();
    NullspaceBasis {
        vectors,
        free_columns: free,
    }
}

/// Kernel by Gauss-Jordan elimination over any field.
pub fn gauss_jordan_nullspace<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> NullspaceBasis<F::Elem> {
    let mut work = m.clone();
    let pivots = rref_in_place(field, &mut work);
    let basis = basis_from_rref(
        m.cols,
        &pivots,
        |i, f| work.get(i, f).clone(),
        field.zero(),
        field.one(),
        |e| field.neg(e),
    );
    debug_check(field, m, &basis);
    basis
}

fn debug_check<F: Field>(field: &F, m: &DenseMatrix<F::Elem>, basis: &NullspaceBasis<F::Elem>) {
    if cfg!(debug_assertions) {
        for v in &basis.vectors {
            assert!(
                mat_vec(field, m, v).iter().all(|x| field.is_zero(x)),
                "kernel vector does not annihilate the matrix"
            );
        }
    }
}

/// Row-reduces a matrix of residues modulo `p`; returns the pivots.
fn rref_mod_p(rows: usize, cols: usize, a: &mut [u64], p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(src) = (pr..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if src != pr {
            for j in 0..cols {
                a.swap(src * cols + j, pr * cols + j);
            }
        }
        let inv = inv_mod(a[pr * cols + c], p).expect("pivot is invertible");
        for j in c..cols {
            a[pr * cols + j] = mul_mod(a[pr * cols + j], inv, p);
        }
        let (head, rest) = a.split_at_mut(pr * cols);
        let (prow, tail) = rest.split_at_mut(cols);
        for row in head.chunks_exact_mut(cols).chain(tail.chunks_exact_mut(cols)) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for j in c..cols {
                if prow[j] != 0 {
                    row[j] = (row[j] + nf * prow[j]) % p;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

/// Kernel over GF(p) for a matrix of reduced residues.
pub fn nullspace_mod_p(m: &DenseMatrix<u64>, p: u64) -> NullspaceBasis<u64> {
    let mut work = m.entries.clone();
    let pivots = rref_mod_p(m.rows, m.cols, &mut work, p);
    let cols = m.cols;
    basis_from_rref(
        cols,
        &pivots,
        |i, f| work[i * cols + f],
        0,
        1,
        |&e| if e == 0 { 0 } else { p - e },
    )
}

/// Scales each row to coprime integers; the kernel is unchanged.
pub fn integer_rows(m: &DenseMatrix<Rational>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let den = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let mut ints: Vec<BigInt> = row.iter().map(|q| q.numer() * (&den / q.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            if !g.is_zero() && !g.is_one() {
                for v in &mut ints {
                    *v = &*v / &g;
                }
            }
            ints
        })
        .collect()
}

/// Whether `v` lies in the kernel of the integer matrix.
fn annihilates(rows: &[Vec<BigInt>], v: &[Rational]) -> bool {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let iv: Vec<BigInt> = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    rows.iter().all(|row| {
        let mut acc = BigInt::zero();
        for (a, b) in row.iter().zip(&iv) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc.is_zero()
    })
}

/// Kernel over the rationals.
///
/// The kernel is first computed modulo word-size primes; the pivot structure
/// of the largest modular rank is lifted by Chinese remaindering and rational
/// reconstruction, and the lifted vectors are checked exactly against the
/// matrix. Verified vectors with unit entries at the modular free columns
/// are then the reduced rational basis, since the rational nullity is at most
/// the modular one. If lifting does not settle within the prime budget the
/// fraction-free elimination is used instead.
pub fn rational_nullspace(m: &DenseMatrix<Rational>) -> NullspaceBasis<Rational> {
    if m.cols == 0 {
        return NullspaceBasis {
            vectors: Vec::new(),
            free_columns: Vec::new(),
        };
    }
    let rows = integer_rows(m);
    let basis = multimodular_nullspace(&rows, m.cols, 400).unwrap_or_else(|| bareiss_nullspace_int(&rows, m.cols));
    if cfg!(debug_assertions) {
        for v in &basis.vectors {
            assert!(annihilates(&rows, v), "kernel vector does not annihilate the matrix");
        }
    }
    basis
}

fn reduce_rows(rows: &[Vec<BigInt>], cols: usize, p: u64) -> DenseMatrix<u64> {
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for row in rows {
        entries.extend(row.iter().map(|v| if v.is_zero() { 0 } else { reduce_bigint(v, p) }));
    }
    DenseMatrix {
        rows: rows.len(),
        cols,
        entries,
    }
}

/// Free columns and, per kernel vector, its residues with their moduli.
type Accumulated = (Vec<usize>, Vec<Vec<(BigInt, BigInt)>>);

fn multimodular_nullspace(rows: &[Vec<BigInt>], cols: usize, max_primes: usize) -> Option<NullspaceBasis<Rational>> {
    let mut best: Option<Accumulated> = None;
    for p in prime_ladder().take(max_primes) {
        let basis = nullspace_mod_p(&reduce_rows(rows, cols, p), p);
        if basis.is_empty() {
            return Some(NullspaceBasis {
                vectors: Vec::new(),
                free_columns: Vec::new(),
            });
        }
        let free = basis.free_columns.clone();
        match &mut best {
            // fewer free columns, or an earlier free set of equal size, wins
            Some((f, _)) if free.len() > f.len() || (free.len() == f.len() && &free < f) => continue,
            Some((f, acc)) if *f == free => {
                for (va, vb) in acc.iter_mut().zip(&basis.vectors) {
                    for (slot, &r) in va.iter_mut().zip(vb) {
                        *slot = crt_combine(&[slot.clone(), (BigInt::from(r), BigInt::from(p))])
                            .expect("distinct primes are coprime");
                    }
                }
            }
            _ => {
                let acc = basis
                    .vectors
                    .iter()
                    .map(|v| v.iter().map(|&r| (BigInt::from(r), BigInt::from(p))).collect())
                    .collect();
                best = Some((free, acc));
            }
        }
        let (free, acc) = best.as_ref().unwrap();
        if let Some(vectors) = lift(acc) {
            if vectors.iter().all(|v| annihilates(rows, v)) {
                return Some(NullspaceBasis {
                    vectors,
                    free_columns: free.clone(),
                });
            }
        }
    }
    None
}

fn lift(acc: &[Vec<(BigInt, BigInt)>]) -> Option<Vec<Vec<Rational>>> {
    acc.iter()
        .map(|v| {
            v.iter()
                .map(|(a, m)| {
                    if a.is_zero() {
                        Ok(Rational::zero())
                    } else {
                        rational_reconstruct(a, m)
                    }
                })
                .collect::<Result<Vec<_>, _>>()
                .ok()
        })
        .collect()
}

/// Kernel over the rationals by fraction-free (Bareiss) elimination.
pub fn bareiss_nullspace(m: &DenseMatrix<Rational>) -> NullspaceBasis<Rational> {
    bareiss_nullspace_int(&integer_rows(m), m.cols)
}

fn bareiss_nullspace_int(rows: &[Vec<BigInt>], cols: usize) -> NullspaceBasis<Rational> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let n = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut pr = 0;
    for c in 0..cols {
        if pr == n {
            break;
        }
        let Some(src) = (pr..n).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(src, pr);
        for r in pr + 1..n {
            for j in c + 1..cols {
                let v = (&a[pr][c] * &a[r][j] - &a[r][c] * &a[pr][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[pr][c].clone();
        pivots.push(c);
        pr += 1;
    }
    // back-substitution on the echelon form, one free column at a time
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate().rev() {
                if p > f {
                    continue;
                }
                let mut acc = Rational::zero();
                for j in p + 1..=f {
                    if !a[i][j].is_zero() && !v[j].is_zero() {
                        acc += Rational::from_integer(a[i][j].clone()) * &v[j];
                    }
                }
                v[p] = -acc / Rational::from_integer(a[i][p].clone());
            }
            v
        })
        .collect();
    NullspaceBasis {
        vectors,
        free_columns: free,
    }
}

/// Column rank over the rationals.
pub fn rational_rank(m: &DenseMatrix<Rational>) -> usize {
    m.cols - rational_nullspace(m).dim()
}

/// Row-normalizes a modular or rational vector so entry `pivot` becomes one.
pub fn normalize_at<F: Field>(field: &F, v: &[F::Elem], pivot: usize) -> Option<Vec<F::Elem>> {
    let inv = field.inv(&v[pivot])?;
    Some(v.iter().map(|x| field.mul(x, &inv)).collect())
}
