//! `R⟨x, y⟩ / (x², y²)` in the alternating-word basis.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng as RandRng;
use thiserror::Error;

use crate::group_algebra::LaurentElement;
use crate::rings::{check_same, format_combination, Ring, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("factor {0} is not of the form 1 + c*x or 1 + c*y")]
    NotElementary(String),
    #[error("x{var} has a negative exponent but its value is not a certified unit")]
    NotAUnit { var: u32 },
    #[error("x{var} is not assigned ({provided} values given)")]
    MissingVariable { var: u32, provided: usize },
    #[error("unit certificate failed to verify")]
    Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// An alternating word, stored as its first letter and length. The empty
/// word has length zero and is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlternatingWord {
    start: Letter,
    len: u32,
}

impl AlternatingWord {
    pub fn empty() -> Self {
        AlternatingWord { start: Letter::X, len: 0 }
    }

    pub fn letter(l: Letter) -> Self {
        AlternatingWord { start: l, len: 1 }
    }

    pub fn new(start: Letter, len: u32) -> Self {
        if len == 0 {
            Self::empty()
        } else {
            AlternatingWord { start, len }
        }
    }

    /// `None` when two adjacent letters coincide.
    pub fn from_letters(letters: &[Letter]) -> Option<Self> {
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(match letters.first() {
            Some(&s) => AlternatingWord::new(s, letters.len() as u32),
            None => Self::empty(),
        })
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn first(&self) -> Option<Letter> {
        (self.len > 0).then_some(self.start)
    }

    pub fn last(&self) -> Option<Letter> {
        match self.len {
            0 => None,
            n if n % 2 == 1 => Some(self.start),
            _ => Some(self.start.other()),
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut l = self.start;
        (0..self.len)
            .map(|_| {
                let cur = l;
                l = l.other();
                cur
            })
            .collect()
    }

    /// Concatenation, `None` when the junction produces `x²` or `y²`.
    pub fn concat(&self, other: &Self) -> Option<Self> {
        match (self.last(), other.first()) {
            (None, _) => Some(*other),
            (_, None) => Some(*self),
            (Some(a), Some(b)) if a == b => None,
            _ => Some(AlternatingWord::new(self.start, self.len + other.len)),
        }
    }
}

impl Ord for AlternatingWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| if self.len == 0 { Ordering::Equal } else { self.start.cmp(&other.start) })
    }
}

impl PartialOrd for AlternatingWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let text: Vec<String> = self.letters().iter().map(|l| l.symbol().to_string()).collect();
        f.write_str(&text.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientElement<R: Ring> {
    ring: R,
    terms: BTreeMap<AlternatingWord, R::Elem>,
}

impl<R: Ring> QuotientElement<R> {
    pub fn zero(ring: R) -> Self {
        QuotientElement { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, AlternatingWord::empty())
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::monomial(ring, c, AlternatingWord::empty())
    }

    pub fn x(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, AlternatingWord::letter(Letter::X))
    }

    pub fn y(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, AlternatingWord::letter(Letter::Y))
    }

    pub fn monomial(ring: R, c: R::Elem, w: AlternatingWord) -> Self {
        Self::from_terms(ring, [(w, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (AlternatingWord, R::Elem)>>(ring: R, terms: I) -> Self {
        let mut out = Self::zero(ring);
        for (w, c) in terms {
            out.accumulate(w, &c);
        }
        out
    }

    fn accumulate(&mut self, w: AlternatingWord, c: &R::Elem) {
        let r = &self.ring;
        let entry = self.terms.entry(w).or_insert_with(|| r.zero());
        *entry = r.add(entry, c);
        if r.is_zero(entry) {
            self.terms.remove(&w);
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AlternatingWord, &R::Elem)> {
        self.terms.iter()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &AlternatingWord) -> R::Elem {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        check_same(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(*w, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        QuotientElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, c)| (*w, self.ring.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(w, c)| (*w, self.ring.mul(k, c))),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        q_multiply(self, other)
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..k {
            acc = q_multiply(&acc, self).expect("same ring");
        }
        acc
    }

    /// Random element with at most `max_support` terms of length at most
    /// `max_len`. Coefficients are residues over finite rings and lie in
    /// `[-9, 9]` otherwise.
    pub fn sample<G: RandRng + ?Sized>(ring: R, rng: &mut G, max_support: usize, max_len: u32) -> Self {
        let count = rng.gen_range(0..=max_support);
        let terms: Vec<_> = (0..count)
            .map(|_| {
                let len = rng.gen_range(0..=max_len);
                let start = if rng.gen_bool(0.5) { Letter::X } else { Letter::Y };
                let c = match ring.order() {
                    Some(q) => ring.from_i64(rng.gen_range(0..q as i64)),
                    None => ring.from_i64(rng.gen_range(-9..=9)),
                };
                (AlternatingWord::new(start, len), c)
            })
            .collect();
        Self::from_terms(ring, terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl<R: Ring> fmt::Display for QuotientElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = format_combination(
            &self.ring,
            self.terms
                .iter()
                .map(|(w, c)| ((!w.is_empty()).then(|| w.to_string()), c)),
        );
        f.write_str(&text)
    }
}

impl<R: Ring> crate::rings::UnitalAlgebra for QuotientElement<R> {
    type Scalars = R;

    fn scalars(&self) -> &R {
        &self.ring
    }

    fn unit_like(&self) -> Self {
        Self::one(self.ring.clone())
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.ring.clone())
    }

    fn alg_add(&self, other: &Self) -> Self {
        self.add(other).expect("same ring")
    }

    fn alg_mul(&self, other: &Self) -> Self {
        q_multiply(self, other).expect("same ring")
    }

    fn alg_scale(&self, c: &R::Elem) -> Self {
        self.scale(c)
    }
}

/// Bilinear product; basis words multiply by concatenation and vanish when
/// the junction letters coincide.
pub fn q_multiply<R: Ring>(u: &QuotientElement<R>, v: &QuotientElement<R>) -> Result<QuotientElement<R>, RingError> {
    check_same(&u.ring, &v.ring)?;
    let r = &u.ring;
    let mut out = QuotientElement::zero(r.clone());
    for (a, ca) in &u.terms {
        for (b, cb) in &v.terms {
            if let Some(w) = a.concat(b) {
                out.accumulate(w, &r.mul(ca, cb));
            }
        }
    }
    Ok(out)
}

/// A unit with a verified two-sided inverse, built from factors `1 + c·s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientUnit<R: Ring> {
    value: QuotientElement<R>,
    inverse: QuotientElement<R>,
    factors: Vec<(R::Elem, Letter)>,
}

impl<R: Ring> QuotientUnit<R> {
    pub fn value(&self) -> &QuotientElement<R> {
        &self.value
    }

    pub fn inverse(&self) -> &QuotientElement<R> {
        &self.inverse
    }

    pub fn factors(&self) -> &[(R::Elem, Letter)] {
        &self.factors
    }

    /// Re-checks `value·inverse = inverse·value = 1`.
    pub fn verify(&self) -> bool {
        let one = QuotientElement::one(self.value.ring.clone());
        q_multiply(&self.value, &self.inverse).ok().as_ref() == Some(&one)
            && q_multiply(&self.inverse, &self.value).ok().as_ref() == Some(&one)
    }
}

/// Product of `1 + c·s` in order, with inverse the product of `1 − c·s` in
/// reverse order.
pub fn q_unit<R: Ring>(ring: R, factors: &[(R::Elem, Letter)]) -> Result<QuotientUnit<R>, QuotientError> {
    let mut value = QuotientElement::one(ring.clone());
    let mut inverse = QuotientElement::one(ring.clone());
    for (c, s) in factors {
        let w = AlternatingWord::letter(*s);
        let f = QuotientElement::from_terms(ring.clone(), [(AlternatingWord::empty(), ring.one()), (w, c.clone())]);
        let g = QuotientElement::from_terms(ring.clone(), [(AlternatingWord::empty(), ring.one()), (w, ring.neg(c))]);
        value = q_multiply(&value, &f)?;
        inverse = q_multiply(&g, &inverse)?;
    }
    let unit = QuotientUnit { value, inverse, factors: factors.to_vec() };
    if !unit.verify() {
        return Err(QuotientError::Certificate);
    }
    Ok(unit)
}

/// Reads each element as `1 + c·s` and builds the certified product.
pub fn q_unit_from_elements<R: Ring>(
    ring: R,
    factors: &[QuotientElement<R>],
) -> Result<QuotientUnit<R>, QuotientError> {
    let mut parsed = Vec::with_capacity(factors.len());
    for f in factors {
        check_same(&ring, f.ring())?;
        let not_elementary = || QuotientError::NotElementary(f.to_string());
        if !ring.is_one(&f.coefficient(&AlternatingWord::empty())) {
            return Err(not_elementary());
        }
        let rest: Vec<_> = f.terms().filter(|(w, _)| !w.is_empty()).collect();
        match rest.as_slice() {
            [] => {}
            [(w, c)] if w.len() == 1 => parsed.push(((*c).clone(), w.start)),
            _ => return Err(not_elementary()),
        }
    }
    q_unit(ring, &parsed)
}

/// A value for one variable in [`q_evaluate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientValue<R: Ring> {
    Element(QuotientElement<R>),
    Unit(QuotientUnit<R>),
}

impl<R: Ring> QuotientValue<R> {
    pub fn value(&self) -> &QuotientElement<R> {
        match self {
            QuotientValue::Element(e) => e,
            QuotientValue::Unit(u) => u.value(),
        }
    }

    fn inverse(&self) -> Option<&QuotientElement<R>> {
        match self {
            QuotientValue::Element(_) => None,
            QuotientValue::Unit(u) => Some(u.inverse()),
        }
    }
}

impl<R: Ring> From<QuotientElement<R>> for QuotientValue<R> {
    fn from(e: QuotientElement<R>) -> Self {
        QuotientValue::Element(e)
    }
}

impl<R: Ring> From<QuotientUnit<R>> for QuotientValue<R> {
    fn from(u: QuotientUnit<R>) -> Self {
        QuotientValue::Unit(u)
    }
}

/// Substitutes `xᵢ ↦ assignment[i-1]` word by word. Negative exponents need
/// a certified unit.
pub fn q_evaluate<R: Ring>(
    e: &LaurentElement<R>,
    assignment: &[QuotientValue<R>],
) -> Result<QuotientElement<R>, QuotientError> {
    let arity = e.arity() as usize;
    if assignment.len() < arity {
        return Err(QuotientError::MissingVariable {
            var: assignment.len() as u32 + 1,
            provided: assignment.len(),
        });
    }
    let ring = e.ring().clone();
    for a in &assignment[..arity] {
        check_same(&ring, a.value().ring())?;
    }
    let mut acc = QuotientElement::zero(ring.clone());
    for (word, c) in e.terms() {
        let mut term = QuotientElement::one(ring.clone());
        for s in word.syllables() {
            let slot = &assignment[s.generator as usize - 1];
            let base = if s.exponent < 0 {
                slot.inverse().ok_or(QuotientError::NotAUnit { var: s.generator })?
            } else {
                slot.value()
            };
            term = q_multiply(&term, &base.pow(s.exponent.unsigned_abs()))?;
        }
        acc = acc.add(&term.scale(c))?;
    }
    Ok(acc)
}
