use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::search::{first_violation, sample_rng};
use super::{CheckerError, Mode, Outcome, SearchConfig, Verdict};
use crate::freegroup::FreeWord;
use crate::group_algebra::{standard_polynomial, LaurentElement};
use crate::matrix::{AlgebraHandle, Matrix};
use crate::quotient::{q_evaluate, q_unit, Letter, QuotientElement, QuotientValue};
use crate::rings::{Integers, PrimeField, Ring};

/// Per-word coefficients of the expansion and of the reference formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S3Row {
    pub word: String,
    pub expansion: BigInt,
    pub reference: BigInt,
    pub expansion_mod2: u32,
    pub reference_mod2: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct S3Comparison {
    pub expansion: LaurentElement<Integers>,
    pub reference: LaurentElement<Integers>,
    pub expansion_mod2: LaurentElement<PrimeField>,
    pub reference_mod2: LaurentElement<PrimeField>,
    pub rows: Vec<S3Row>,
    pub matches: bool,
    pub matches_mod2: bool,
}

/// Writes `x1`, `x2` as `X`, `Y`.
pub(crate) fn xy_text(text: &str) -> String {
    text.replace("x1", "X").replace("x2", "Y")
}

impl S3Comparison {
    pub fn to_json(&self) -> Value {
        json!({
            "expansion": xy_text(&self.expansion.to_string()),
            "reference": xy_text(&self.reference.to_string()),
            "expansion_mod2": xy_text(&self.expansion_mod2.to_string()),
            "reference_mod2": xy_text(&self.reference_mod2.to_string()),
            "matches": self.matches,
            "matches_mod2": self.matches_mod2,
            "terms": self.rows.iter().map(|r| json!({
                "word": r.word,
                "expansion": r.expansion.to_string(),
                "reference": r.reference.to_string(),
                "expansion_mod2": r.expansion_mod2,
                "reference_mod2": r.reference_mod2,
                "match": r.expansion == r.reference,
            })).collect::<Vec<_>>(),
        })
    }
}

fn xy_word(s: &[(u32, i64)]) -> FreeWord {
    FreeWord::from_syllables(s.iter().copied()).expect("positive generators")
}

/// `(YX)² − X²Y² − YX²Y + XY²X` with `X = x1`, `Y = x2`.
pub fn s3_reference_formula() -> LaurentElement<Integers> {
    let z = Integers;
    LaurentElement::from_terms(
        z,
        [
            (xy_word(&[(2, 1), (1, 1), (2, 1), (1, 1)]), z.from_i64(1)),
            (xy_word(&[(1, 2), (2, 2)]), z.from_i64(-1)),
            (xy_word(&[(2, 1), (1, 2), (2, 1)]), z.from_i64(-1)),
            (xy_word(&[(1, 1), (2, 2), (1, 1)]), z.from_i64(1)),
        ],
    )
}

fn reduce_mod2(e: &LaurentElement<Integers>) -> LaurentElement<PrimeField> {
    let f2 = PrimeField::new(2).expect("2 is prime");
    LaurentElement::from_terms(f2, e.terms().map(|(w, c)| (w.clone(), f2.from_integer(c))))
}

/// Expands `S₃(X, Y, XY)` and compares it term by term with the reference
/// formula, over `ZZ` and mod 2.
pub fn s3_expand() -> Result<S3Comparison, CheckerError> {
    let s3 = standard_polynomial(Integers, 3)?;
    let xy = xy_word(&[(1, 1), (2, 1)]);
    let expansion = s3.substitute(3, &xy);
    let reference = s3_reference_formula();
    let expansion_mod2 = reduce_mod2(&expansion);
    let reference_mod2 = reduce_mod2(&reference);
    let words: BTreeSet<FreeWord> = expansion.terms().chain(reference.terms()).map(|(w, _)| w.clone()).collect();
    let rows = words
        .iter()
        .map(|w| S3Row {
            word: xy_text(&w.to_string()),
            expansion: expansion.coefficient(w),
            reference: reference.coefficient(w),
            expansion_mod2: expansion_mod2.coefficient(w),
            reference_mod2: reference_mod2.coefficient(w),
        })
        .collect();
    Ok(S3Comparison {
        matches: expansion == reference,
        matches_mod2: expansion_mod2 == reference_mod2,
        expansion,
        reference,
        expansion_mod2,
        reference_mod2,
        rows,
    })
}

/// Idempotents that fail to commute with some element.
pub fn idempotent_centrality<R: Ring>(h: &AlgebraHandle<R>, cap: u64) -> Result<Vec<Matrix<R>>, CheckerError> {
    let elements: Vec<Matrix<R>> = h.enumerate_elements(cap)?.collect();
    Ok(elements
        .iter()
        .filter(|e| e.mul_unchecked(e) == **e)
        .filter(|e| elements.iter().any(|m| e.mul_unchecked(m) != m.mul_unchecked(e)))
        .cloned()
        .collect())
}

/// Free multiplication on letter strings followed by deletion of every
/// string containing `xx` or `yy`.
fn rewrite_evaluate<R: Ring>(e: &LaurentElement<R>, args: &[QuotientElement<R>]) -> Option<BTreeMap<Vec<Letter>, R::Elem>> {
    let ring = e.ring();
    let expand = |q: &QuotientElement<R>| -> Vec<(Vec<Letter>, R::Elem)> {
        q.terms().map(|(w, c)| (w.letters(), c.clone())).collect()
    };
    let mut total: BTreeMap<Vec<Letter>, R::Elem> = BTreeMap::new();
    for (word, c) in e.terms() {
        let mut acc: Vec<(Vec<Letter>, R::Elem)> = vec![(Vec::new(), c.clone())];
        for s in word.syllables() {
            if s.exponent < 0 {
                return None;
            }
            let factor = expand(args.get(s.generator as usize - 1)?);
            for _ in 0..s.exponent {
                let mut next = Vec::new();
                for (wa, ca) in &acc {
                    for (wb, cb) in &factor {
                        let w: Vec<Letter> = wa.iter().chain(wb).copied().collect();
                        if w.windows(2).all(|p| p[0] != p[1]) {
                            next.push((w, ring.mul(ca, cb)));
                        }
                    }
                }
                acc = next;
            }
        }
        for (w, c) in acc {
            let slot = total.entry(w).or_insert_with(|| ring.zero());
            *slot = ring.add(slot, &c);
        }
    }
    total.retain(|_, c| !ring.is_zero(c));
    Some(total)
}

/// Samples tuples of `2n` quotient elements and checks `S_{2n} = 0`; also
/// evaluates `S₂` and `S₃` on the units `1+x`, `1+y`, `(1+x)(1+y)`.
pub fn quotient_pi_check<R: Ring>(ring: R, n: usize, cfg: &SearchConfig) -> Result<Verdict, CheckerError> {
    const SUPPORT: usize = 8;
    const LENGTH: u32 = 5;
    let started = Instant::now();
    if n == 0 {
        return Err(CheckerError::Invalid("n must be at least 1".into()));
    }
    let cfg = SearchConfig { mode: Mode::Random, ..*cfg };
    let s = standard_polynomial(ring.clone(), 2 * n)?;
    let (found, evaluations) = first_violation(cfg.budget, cfg.workers, |i| {
        let mut rng = sample_rng(cfg.seed, i);
        let args: Vec<QuotientElement<R>> =
            (0..2 * n).map(|_| QuotientElement::sample(ring.clone(), &mut rng, SUPPORT, LENGTH)).collect();
        let values: Vec<QuotientValue<R>> = args.iter().cloned().map(Into::into).collect();
        let v = q_evaluate(&s, &values)?;
        Ok((!v.is_zero()).then_some((args, v)))
    })?;

    let one = ring.one();
    let ux = q_unit(ring.clone(), &[(one.clone(), Letter::X)])?;
    let uy = q_unit(ring.clone(), &[(one.clone(), Letter::Y)])?;
    let uxy = q_unit(ring.clone(), &[(one.clone(), Letter::X), (one, Letter::Y)])?;
    let s2 = q_evaluate(&standard_polynomial(ring.clone(), 2)?, &[ux.clone().into(), uy.clone().into()])?;
    let s3 = q_evaluate(&standard_polynomial(ring.clone(), 3)?, &[ux.into(), uy.into(), uxy.into()])?;

    let verdict = match found {
        None => Verdict::new(Outcome::Holds, &cfg, evaluations, started),
        Some(hit) => {
            let (args, v) = hit.item;
            if rewrite_evaluate(&s, &args).is_none_or(|m| m.is_empty()) {
                return Err(CheckerError::VerificationFailed("quotient witness".into()));
            }
            Verdict::new(Outcome::Counterexample, &cfg, evaluations, started)
                .with_witness(Value::Array(args.iter().map(QuotientElement::to_json).collect()))
                .detail("witness_index", hit.index)
                .detail("value", v.to_string())
        }
    };
    Ok(verdict
        .detail("n", n)
        .detail("max_support", SUPPORT)
        .detail("max_length", LENGTH)
        .detail("s2_on_units", s2.to_string())
        .detail("s2_on_units_zero", s2.is_zero())
        .detail("s3_on_units", s3.to_string())
        .detail("s3_on_units_zero", s3.is_zero()))
}
