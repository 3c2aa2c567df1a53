//! Products of derivatives (or shifts) and the graded lexicographic order on them.
//!
//! A monomial `y^(j1) * ... * y^(jl)` is stored as its orders sorted in
//! descending order. With that layout the order used throughout the crate is
//! the plain lexicographic order on the vectors: the highest derivative decides
//! first, ties are broken by the next highest factor, and a proper prefix (a
//! product with fewer factors) is smaller. The empty vector is the constant
//! monomial `1`, smaller than everything else.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Whether monomials are read as derivatives of `y(x)` or shifts of `s(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    Derivative,
    Shift,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DerivMonomial {
    orders: Vec<u32>,
}

impl DerivMonomial {
    /// Builds a monomial from any arrangement of orders.
    pub fn new(mut orders: Vec<u32>) -> Self {
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Self { orders }
    }

    pub fn one() -> Self {
        Self { orders: Vec::new() }
    }

    /// `y^(j)` alone.
    pub fn single(j: u32) -> Self {
        Self { orders: vec![j] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn is_one(&self) -> bool {
        self.orders.is_empty()
    }

    /// Highest derivative order; `None` for the constant monomial.
    pub fn order(&self) -> Option<u32> {
        self.orders.first().copied()
    }

    /// Number of factors.
    pub fn degree(&self) -> usize {
        self.orders.len()
    }

    /// Multiplicity of `y^(j)` in the product.
    pub fn multiplicity(&self, j: u32) -> usize {
        self.orders.iter().filter(|&&o| o == j).count()
    }

    /// The product with one factor `y^(j)` removed, if present.
    pub fn remove_one(&self, j: u32) -> Option<Self> {
        let pos = self.orders.iter().position(|&o| o == j)?;
        let mut orders = self.orders.clone();
        orders.remove(pos);
        Some(Self { orders })
    }

    /// Drops the leading (highest) factor.
    pub fn tail(&self) -> Self {
        Self {
            orders: self.orders.get(1..).unwrap_or_default().to_vec(),
        }
    }

    pub fn render(&self, var: Variable) -> String {
        if self.orders.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.orders.len() {
            let j = self.orders[i];
            let run = self.orders[i..].iter().take_while(|&&o| o == j).count();
            let base = render_factor(j, var);
            parts.push(if run > 1 { format!("{base}^{run}") } else { base });
            i += run;
        }
        parts.join("*")
    }
}

fn render_factor(j: u32, var: Variable) -> String {
    match var {
        Variable::Derivative => match j {
            0 => "y".into(),
            1 => "y'".into(),
            2 => "y''".into(),
            _ => format!("y^({j})"),
        },
        Variable::Shift => match j {
            0 => "s(n)".into(),
            _ => format!("s(n+{j})"),
        },
    }
}

impl fmt::Display for DerivMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Variable::Derivative))
    }
}

/// Compares two monomials in the graded lexicographic order.
pub fn compare_monomials(a: &DerivMonomial, b: &DerivMonomial) -> Ordering {
    a.cmp(b)
}

/// Binomial coefficient, saturating at `usize::MAX`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Number of monomials of degree at most `k` whose highest order is exactly `r`.
pub fn count_order(k: usize, r: usize) -> usize {
    binomial(k + r, k - 1)
}

/// `(m(r), M(r))`: the first and last index of the order-`r` block.
pub fn block_bounds(k: usize, r: usize) -> (usize, usize) {
    assert!(k >= 1, "degree bound must be positive");
    let upper = |r: usize| binomial(k + r + 1, k) - 2;
    let lower = if r == 0 { 0 } else { upper(r - 1) + 1 };
    (lower, upper(r))
}

/// All monomials of highest order exactly `r` and degree at most `k`, ascending.
pub fn order_block(k: usize, r: u32) -> Vec<DerivMonomial> {
    let mut out = Vec::with_capacity(count_order(k, r as usize));
    let mut cur = vec![r];
    extend_block(k, r, &mut cur, &mut out);
    out.sort();
    out
}

fn extend_block(k: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<DerivMonomial>) {
    out.push(DerivMonomial { orders: cur.clone() });
    if cur.len() == k {
        return;
    }
    for j in 0..=max {
        cur.push(j);
        extend_block(k, j, cur, out);
        cur.pop();
    }
}

fn block_of(k: usize, j: usize) -> u32 {
    let mut r = 0;
    while block_bounds(k, r).1 < j {
        r += 1;
    }
    r as u32
}

/// The `(j+1)`-st smallest non-constant monomial of degree at most `k`.
pub fn delta_monomial(k: usize, j: usize) -> DerivMonomial {
    let r = block_of(k, j);
    let (lo, _) = block_bounds(k, r as usize);
    order_block(k, r).swap_remove(j - lo)
}

/// Inverse of [`delta_monomial`]. Panics for the constant or an over-degree monomial.
pub fn delta_index(k: usize, m: &DerivMonomial) -> usize {
    assert!(
        !m.is_one() && m.degree() <= k,
        "monomial {m} is not indexed for degree bound {k}"
    );
    let r = m.order().unwrap();
    let (lo, _) = block_bounds(k, r as usize);
    let block = order_block(k, r);
    lo + block.binary_search(m).expect("monomial lies in its own block")
}

/// The first `len` monomials, i.e. indices `0..len`.
pub fn delta_prefix(k: usize, len: usize) -> Vec<DerivMonomial> {
    let mut out = Vec::with_capacity(len);
    let mut r = 0;
    while out.len() < len {
        let block = order_block(k, r);
        let take = (len - out.len()).min(block.len());
        out.extend(block.into_iter().take(take));
        r += 1;
    }
    out
}
