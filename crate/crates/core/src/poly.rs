//! Guessed equations: sparse sums of `c * x^e * m(y)` or `c * m(s)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::monomial::{DerivMonomial, Variable};

/// Differential polynomials in `x, y, y', ...` or difference polynomials in
/// `s(n), s(n+1), ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyKind {
    Differential,
    Difference,
}

impl PolyKind {
    pub fn variable(self) -> Variable {
        match self {
            PolyKind::Differential => Variable::Derivative,
            PolyKind::Difference => Variable::Shift,
        }
    }
}

/// A column of the ansatz: monomial first, then the power of `x`, so the
/// derived order sorts by the monomial order and then ascending `x` degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub mono: DerivMonomial,
    pub xdeg: u32,
}

impl Key {
    pub fn new(xdeg: u32, mono: DerivMonomial) -> Self {
        Self { mono, xdeg }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<E> {
    pub key: Key,
    pub coeff: E,
}

/// A polynomial with terms in ascending key order, no duplicate keys and no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<E> {
    kind: PolyKind,
    terms: Vec<Term<E>>,
}

/// Rational differential polynomial.
pub type DiffPoly = Poly<crate::arith::Rational>;
/// Rational difference polynomial.
pub type SeqPoly = Poly<crate::arith::Rational>;

impl<E: Clone> Poly<E> {
    /// Collects terms, summing repeated keys and dropping zeros.
    pub fn from_terms<F: Field<Elem = E>>(
        field: &F,
        kind: PolyKind,
        terms: impl IntoIterator<Item = (Key, E)>,
    ) -> Self {
        let mut acc: BTreeMap<Key, E> = BTreeMap::new();
        for (k, c) in terms {
            if kind == PolyKind::Difference && k.xdeg != 0 {
                panic!("difference polynomials have constant coefficients");
            }
            let slot = acc.entry(k).or_insert_with(|| field.zero());
            *slot = field.add(slot, &c);
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(key, coeff)| Term { key, coeff })
            .collect();
        Self { kind, terms }
    }

    pub fn zero(kind: PolyKind) -> Self {
        Self {
            kind,
            terms: Vec::new(),
        }
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order or shift; `None` for a constant or zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().filter_map(|t| t.key.mono.order()).max()
    }

    /// Largest number of factors in a monomial.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.key.mono.degree()).max().unwrap_or(0)
    }

    pub fn coeff(&self, key: &Key) -> Option<&E> {
        self.terms
            .binary_search_by(|t| t.key.cmp(key))
            .ok()
            .map(|i| &self.terms[i].coeff)
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.terms.iter().map(|t| &t.key)
    }

    /// The normalization key: greatest monomial, lowest `x` degree among its terms.
    pub fn pivot_key(&self) -> Option<&Key> {
        let top = &self.terms.last()?.key.mono;
        self.terms.iter().map(|t| &t.key).find(|k| &k.mono == top)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::from_terms(
            field,
            self.kind,
            self.terms.iter().map(|t| (t.key.clone(), field.mul(&t.coeff, c))),
        )
    }

    /// Scales so the pivot coefficient becomes one.
    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.pivot_key().and_then(|k| self.coeff(k)).and_then(|c| field.inv(c)) {
            Some(inv) => self.scale(field, &inv),
            None => self.clone(),
        }
    }

    /// The field's canonical multiple, taken at the pivot key.
    pub fn normalized<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let Some(pivot) = self.pivot_key() else {
            return self.clone();
        };
        let idx = self.terms.iter().position(|t| &t.key == pivot).unwrap();
        let coeffs: Vec<E> = self.terms.iter().map(|t| t.coeff.clone()).collect();
        let scaled = field.normalize(&coeffs, idx);
        Self {
            kind: self.kind,
            terms: self
                .terms
                .iter()
                .zip(scaled)
                .map(|(t, coeff)| Term {
                    key: t.key.clone(),
                    coeff,
                })
                .collect(),
        }
    }

    /// Partial derivative with respect to the highest derivative or shift.
    pub fn separant<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let Some(r) = self.order() else {
            return Self::zero(self.kind);
        };
        self.partial(field, r)
    }

    /// Partial derivative with respect to `y^(j)` (or `s(n+j)`).
    pub fn partial<F: Field<Elem = E>>(&self, field: &F, j: u32) -> Self {
        Self::from_terms(
            field,
            self.kind,
            self.terms.iter().filter_map(|t| {
                let mult = t.key.mono.multiplicity(j);
                let rest = t.key.mono.remove_one(j)?;
                Some((Key::new(t.key.xdeg, rest), field.mul_u64(&t.coeff, mult as u64)))
            }),
        )
    }

    /// Leading coefficient as a polynomial in the highest shift, and whether
    /// that shift appears only linearly.
    pub fn initial<F: Field<Elem = E>>(&self, field: &F) -> (Self, bool) {
        let Some(r) = self.order() else {
            return (self.clone(), true);
        };
        let top = self.terms.iter().map(|t| t.key.mono.multiplicity(r)).max().unwrap_or(0);
        let init = Self::from_terms(
            field,
            self.kind,
            self.terms
                .iter()
                .filter(|t| t.key.mono.multiplicity(r) == top)
                .map(|t| {
                    let rest: Vec<u32> = t.key.mono.orders().iter().copied().filter(|&o| o != r).collect();
                    (Key::new(t.key.xdeg, DerivMonomial::new(rest)), t.coeff.clone())
                }),
        );
        (init, top <= 1)
    }

    /// Text form, terms in ascending key order, e.g. `y - x*y' + x*y'*y`.
    pub fn render<F: Field<Elem = E>>(&self, field: &F) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = field.is_negative(&t.coeff);
            let mag = if neg { field.neg(&t.coeff) } else { t.coeff.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut parts = Vec::new();
            if !field.is_zero(&field.sub(&mag, &field.one())) {
                parts.push(field.render(&mag));
            }
            match t.key.xdeg {
                0 => {}
                1 => parts.push("x".into()),
                e => parts.push(format!("x^{e}")),
            }
            if !t.key.mono.is_one() {
                parts.push(t.key.mono.render(self.kind.variable()));
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    pub fn to_doc<F: Field<Elem = E>>(&self, field: &F) -> EquationDoc {
        EquationDoc {
            kind: self.kind,
            terms: self
                .terms
                .iter()
                .map(|t| TermDoc {
                    xdeg: t.key.xdeg,
                    orders: t.key.mono.orders().to_vec(),
                    coeff: field.render(&t.coeff),
                })
                .collect(),
        }
    }

    pub fn from_doc<F: Field<Elem = E>>(field: &F, doc: &EquationDoc) -> Result<Self> {
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in &doc.terms {
            if doc.kind == PolyKind::Difference && t.xdeg != 0 {
                return Err(Error::InvalidInput(
                    "difference equations cannot carry powers of x".into(),
                ));
            }
            terms.push((
                Key::new(t.xdeg, DerivMonomial::new(t.orders.clone())),
                field.parse(&t.coeff)?,
            ));
        }
        Ok(Self::from_terms(field, doc.kind, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub xdeg: u32,
    pub orders: Vec<u32>,
    pub coeff: String,
}

/// Serialized equation: `{"kind": ..., "terms": [{"xdeg", "orders", "coeff"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationDoc {
    pub kind: PolyKind,
    pub terms: Vec<TermDoc>,
}
