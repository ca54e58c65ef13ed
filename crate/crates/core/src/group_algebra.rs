//! Laurent polynomials in noncommuting variables: elements of the group
//! algebra `R F_l`.
//!
//! Besides the ring structure this module carries the machinery that turns a
//! Laurent polynomial identity into a one-variable polynomial relation:
//! admissibility, the `x_i ↦ x_i^k` normalization, the `(l, r, d)` profile and
//! the diagonal specialization `P(t, …, t)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::freegroup::FreeWord;
use crate::rings::{check_same, format_combination, Ring, RingError, UniPoly};

/// Largest `n` accepted by [`standard_polynomial`] (8! terms).
pub const STANDARD_POLYNOMIAL_CAP: usize = 8;
/// Largest `n` accepted by [`amitsur_levitzki`] (uses `S_{2n}`).
pub const AMITSUR_LEVITZKI_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupAlgebraError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("the element is zero")]
    Zero,
    #[error("not admissible: word {0} has exponent sum zero in every variable")]
    Inadmissible(String),
    #[error("no nonconstant word in the support")]
    ConstantOnly,
    #[error("word {0} has total exponent sum zero; normalize first")]
    ZeroTotalExponent(String),
    #[error("no single substitution x_i -> x_i^k makes every total exponent sum nonzero")]
    NoSingleSubstitution,
    #[error("P(t,...,t) collapses to zero after collecting exponents")]
    DiagonalVanishes,
    #[error("n = {n} is outside the supported range 1..={cap}")]
    OutOfRange { n: usize, cap: usize },
    #[error("the empty word gives 1 - 1 = 0, which is not a Laurent polynomial")]
    EmptyWord,
}

/// A finite `R`-linear combination of reduced words, zero coefficients never
/// stored, terms kept in canonical word order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentElement<R: Ring> {
    ring: R,
    terms: BTreeMap<FreeWord, R::Elem>,
}

impl<R: Ring> LaurentElement<R> {
    pub fn zero(ring: R) -> Self {
        LaurentElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::monomial(ring, c, FreeWord::identity())
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::constant(ring, one)
    }

    pub fn monomial(ring: R, c: R::Elem, word: FreeWord) -> Self {
        let mut e = Self::zero(ring);
        e.add_term(word, c);
        e
    }

    pub fn word(ring: R, word: FreeWord) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, word)
    }

    /// Collects `(word, coefficient)` pairs, summing repeated words.
    pub fn from_terms<I: IntoIterator<Item = (FreeWord, R::Elem)>>(ring: R, terms: I) -> Self {
        let mut e = Self::zero(ring);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    fn add_term(&mut self, word: FreeWord, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        let ring = &self.ring;
        match self.terms.get_mut(&word) {
            Some(existing) => {
                let sum = ring.add(existing, &c);
                if ring.is_zero(&sum) {
                    self.terms.remove(&word);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &FreeWord) -> R::Elem {
        self.terms.get(word).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// `P(1, …, 1)`: the sum of all coefficients.
    pub fn coefficient_sum(&self) -> R::Elem {
        self.terms
            .values()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&acc, c))
    }

    /// Number of variables needed to evaluate: the largest generator index.
    pub fn arity(&self) -> u32 {
        self.terms.keys().map(FreeWord::max_generator).max().unwrap_or(0)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(FreeWord::has_negative_exponent)
    }

    fn nonconstant_words(&self) -> impl Iterator<Item = &FreeWord> {
        self.terms.keys().filter(|w| !w.is_identity())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        check_same(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.neg(&self.ring.one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(w, c)| (w.clone(), self.ring.mul(c, k))),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        check_same(&self.ring, &other.ring)?;
        let mut out = Self::zero(self.ring.clone());
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.multiply(v), self.ring.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Right multiplication of every word by `w`.
    pub fn mul_word(&self, w: &FreeWord) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(u, c)| (u.multiply(w), c.clone())),
        )
    }

    /// Applies `x_var ↦ replacement` to every word and recollects.
    pub fn substitute(&self, var: u32, replacement: &FreeWord) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .map(|(u, c)| (u.substitute(var, replacement), c.clone())),
        )
    }

    /// Applies an arbitrary map on words and recollects.
    pub fn map_words<F: Fn(&FreeWord) -> FreeWord>(&self, f: F) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(u, c)| (f(u), c.clone())),
        )
    }

    /// True iff every nonconstant word has a nonzero exponent sum in at least
    /// one variable.
    pub fn is_admissible(&self) -> bool {
        self.first_inadmissible_word().is_none()
    }

    fn first_inadmissible_word(&self) -> Option<&FreeWord> {
        self.nonconstant_words()
            .find(|w| (1..=w.max_generator()).all(|i| w.exp_sum(i) == 0))
    }

    /// Substitutes one variable `x_i ↦ x_i^k` with `k` minimal so that every
    /// nonconstant word gets a nonzero total exponent sum. Variables are tried
    /// in increasing index; `k = 1` (no substitution) is reported when the
    /// input already qualifies.
    pub fn normalize(&self) -> Result<Normalized<R>, GroupAlgebraError> {
        if self.is_zero() {
            return Err(GroupAlgebraError::Zero);
        }
        if let Some(w) = self.first_inadmissible_word() {
            return Err(GroupAlgebraError::Inadmissible(w.to_string()));
        }
        let sums: Vec<(i64, Vec<i64>)> = self
            .nonconstant_words()
            .map(|w| {
                let per_var = (1..=self.arity()).map(|i| w.exp_sum(i)).collect();
                (w.exp_sum_total(), per_var)
            })
            .collect();
        if sums.iter().all(|(total, _)| *total != 0) {
            return Ok(Normalized {
                element: self.clone(),
                variable: None,
                k: 1,
            });
        }
        for var in 1..=self.arity() {
            let idx = (var - 1) as usize;
            // Words without x_var keep their total; they must already be nonzero.
            if sums.iter().any(|(t, e)| e[idx] == 0 && *t == 0) {
                continue;
            }
            // After x_var ↦ x_var^k the total becomes t + (k-1)e, which vanishes
            // for at most one k per word.
            let blocked: Vec<i64> = sums
                .iter()
                .filter(|(t, e)| e[idx] != 0 && t % e[idx] == 0)
                .map(|(t, e)| 1 - t / e[idx])
                .collect();
            let k = (2..).find(|k| !blocked.contains(k)).expect("finitely many blocked values");
            let element = self.substitute(var, &FreeWord::power_of(var, k));
            return Ok(Normalized {
                element,
                variable: Some(var),
                k: k as u32,
            });
        }
        Err(GroupAlgebraError::NoSingleSubstitution)
    }

    fn check_profile_precondition(&self) -> Result<(), GroupAlgebraError> {
        if self.is_zero() {
            return Err(GroupAlgebraError::Zero);
        }
        if self.nonconstant_words().next().is_none() {
            return Err(GroupAlgebraError::ConstantOnly);
        }
        if let Some(w) = self.nonconstant_words().find(|w| w.exp_sum_total() == 0) {
            return Err(GroupAlgebraError::ZeroTotalExponent(w.to_string()));
        }
        Ok(())
    }

    /// `l = min(0, min Σexp)`, `r = max(0, max Σexp)`, `d = 4(r − l) + 3`,
    /// over the support words. Requires a normalized element.
    pub fn profile(&self) -> Result<LpiProfile, GroupAlgebraError> {
        self.check_profile_precondition()?;
        let totals = self.terms.keys().map(FreeWord::exp_sum_total);
        let l = totals.clone().min().unwrap_or(0).min(0);
        let r = totals.max().unwrap_or(0).max(0);
        Ok(LpiProfile::new(l, r))
    }

    /// Maps every variable to one symbol `t`: returns `P(t, …, t)` and the
    /// polynomial `f0 = t^(−l) · P(t, …, t)`.
    pub fn diagonal_specialize(&self) -> Result<(OneVarLaurent<R>, UniPoly<R>), GroupAlgebraError> {
        let profile = self.profile()?;
        let diag = OneVarLaurent::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(w, c)| (w.exp_sum_total(), c.clone())),
        );
        if diag.is_zero() {
            return Err(GroupAlgebraError::DiagonalVanishes);
        }
        let width = (profile.r - profile.l) as usize + 1;
        let mut coeffs = vec![self.ring.zero(); width];
        for (e, c) in diag.terms() {
            coeffs[(e - profile.l) as usize] = c.clone();
        }
        Ok((diag, UniPoly::new(self.ring.clone(), coeffs)))
    }
}

impl<R: Ring> fmt::Display for LaurentElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = format_combination(
            &self.ring,
            self.terms
                .iter()
                .map(|(w, c)| ((!w.is_identity()).then(|| w.to_string()), c)),
        );
        f.write_str(&text)
    }
}

/// Result of [`LaurentElement::normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized<R: Ring> {
    pub element: LaurentElement<R>,
    /// The substituted variable, `None` when `k = 1`.
    pub variable: Option<u32>,
    pub k: u32,
}

/// Exponent window `(l, r)` and witness-degree bound `d = 4(r − l) + 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LpiProfile {
    pub l: i64,
    pub r: i64,
    pub d: i64,
}

impl LpiProfile {
    pub fn new(l: i64, r: i64) -> Self {
        debug_assert!(l <= 0 && 0 <= r);
        LpiProfile {
            l,
            r,
            d: 4 * (r - l) + 3,
        }
    }

    /// Degree bound `2(r − l) + 1` for the square-zero case `b = c`.
    pub fn square_zero_degree_bound(&self) -> i64 {
        2 * (self.r - self.l) + 1
    }
}

/// Laurent polynomial in one commuting variable `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneVarLaurent<R: Ring> {
    ring: R,
    terms: BTreeMap<i64, R::Elem>,
}

impl<R: Ring> OneVarLaurent<R> {
    pub fn from_terms<I: IntoIterator<Item = (i64, R::Elem)>>(ring: R, terms: I) -> Self {
        let mut map: BTreeMap<i64, R::Elem> = BTreeMap::new();
        for (e, c) in terms {
            let sum = match map.get(&e) {
                Some(prev) => ring.add(prev, &c),
                None => c,
            };
            if ring.is_zero(&sum) {
                map.remove(&e);
            } else {
                map.insert(e, sum);
            }
        }
        OneVarLaurent { ring, terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R::Elem)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, e: i64) -> R::Elem {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> fmt::Display for OneVarLaurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = format_combination(
            &self.ring,
            self.terms.iter().map(|(e, c)| {
                let basis = match e {
                    0 => None,
                    1 => Some("t".to_string()),
                    _ => Some(format!("t^{e}")),
                };
                (basis, c)
            }),
        );
        f.write_str(&text)
    }
}

/// Permutations of `0..n` in lexicographic order, each with its sign.
pub(crate) fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        out.push((perm.clone(), inversions % 2 == 0));
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// `S_n = Σ_σ sign(σ) x_{σ(1)} ⋯ x_{σ(n)}`.
pub fn standard_polynomial<R: Ring>(ring: R, n: usize) -> Result<LaurentElement<R>, GroupAlgebraError> {
    if !(1..=STANDARD_POLYNOMIAL_CAP).contains(&n) {
        return Err(GroupAlgebraError::OutOfRange {
            n,
            cap: STANDARD_POLYNOMIAL_CAP,
        });
    }
    let one = ring.one();
    let minus = ring.neg(&one);
    let terms = signed_permutations(n).into_iter().map(|(p, even)| {
        let word = FreeWord::from_syllables(p.iter().map(|&i| (i as u32 + 1, 1)))
            .expect("generators are positive");
        (word, if even { one.clone() } else { minus.clone() })
    });
    Ok(LaurentElement::from_terms(ring, terms))
}

/// `1 − w`, the Laurent polynomial attached to the group identity `w = 1`.
pub fn gi_to_lpi<R: Ring>(ring: R, w: &FreeWord) -> Result<LaurentElement<R>, GroupAlgebraError> {
    if w.is_identity() {
        return Err(GroupAlgebraError::EmptyWord);
    }
    let minus = ring.neg(&ring.one());
    Ok(LaurentElement::from_terms(
        ring.clone(),
        [(FreeWord::identity(), ring.one()), (w.clone(), minus)],
    ))
}

/// `f₁ = S_{2n} · (x₁ ⋯ x_{2n})⁻¹`, right-multiplied term by term.
pub fn amitsur_levitzki<R: Ring>(ring: R, n: usize) -> Result<LaurentElement<R>, GroupAlgebraError> {
    if !(1..=AMITSUR_LEVITZKI_CAP).contains(&n) {
        return Err(GroupAlgebraError::OutOfRange {
            n,
            cap: AMITSUR_LEVITZKI_CAP,
        });
    }
    let s = standard_polynomial(ring, 2 * n)?;
    let diagonal_word = FreeWord::from_syllables((1..=2 * n as u32).map(|i| (i, 1)))
        .expect("generators are positive");
    Ok(s.mul_word(&diagonal_word.inverse()))
}

/// `f₂ = f₁ + S_{2n}`.
pub fn amitsur_levitzki_companion<R: Ring>(
    ring: R,
    n: usize,
) -> Result<LaurentElement<R>, GroupAlgebraError> {
    let f1 = amitsur_levitzki(ring.clone(), n)?;
    let s = standard_polynomial(ring, 2 * n)?;
    Ok(f1.add(&s)?)
}
