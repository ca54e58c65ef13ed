use std::str::FromStr;
use std::time::Instant;

use serde_json::Value;

use super::search::{digits, first_violation, sample_rng, tuple_count};
use super::{reverify, CheckerError, Mode, Outcome, SearchConfig, Verdict, UNIT_RETRIES};
use crate::freegroup::FreeWord;
use crate::group_algebra::{gi_to_lpi, standard_polynomial, LaurentElement};
use crate::matrix::{evaluate, AlgebraHandle, Matrix, MatrixError};
use crate::rings::{PrimeField, Ring};

/// Which tuples an identity is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundSet {
    /// Units when the element has a negative exponent, all elements otherwise.
    Auto,
    Elements,
    Units,
}

impl GroundSet {
    fn name(self) -> &'static str {
        match self {
            GroundSet::Auto => "auto",
            GroundSet::Elements => "elements",
            GroundSet::Units => "units",
        }
    }
}

impl FromStr for GroundSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(GroundSet::Auto),
            "elements" => Ok(GroundSet::Elements),
            "units" => Ok(GroundSet::Units),
            other => Err(format!("unknown ground set {other:?}")),
        }
    }
}

fn tuple_json<R: Ring>(tuple: &[Matrix<R>]) -> Value {
    Value::Array(tuple.iter().map(Matrix::to_json).collect())
}

/// Checks that `e` vanishes on every tuple of the ground set (exhaustive) or
/// on `budget` seeded random tuples.
pub fn check_lpi<R: Ring>(
    h: &AlgebraHandle<R>,
    e: &LaurentElement<R>,
    ground: GroundSet,
    cfg: &SearchConfig,
) -> Result<Verdict, CheckerError> {
    let started = Instant::now();
    let ground = match ground {
        GroundSet::Auto if e.has_negative_exponent() => GroundSet::Units,
        GroundSet::Auto => GroundSet::Elements,
        GroundSet::Elements if e.has_negative_exponent() => {
            return Err(CheckerError::Invalid(
                "negative exponents can only be evaluated on units".into(),
            ))
        }
        g => g,
    };
    let ring = h.ring();
    if *e.ring() != *ring {
        return Err(crate::rings::RingError::Mismatch { left: e.ring().spec(), right: ring.spec() }.into());
    }
    let arity = e.arity() as usize;

    // an identity of a unital algebra must vanish at (I, …, I), i.e. have zero coefficient sum
    if !ring.is_zero(&e.coefficient_sum()) {
        let tuple = vec![h.identity(); arity];
        let value = evaluate(e, &tuple)?;
        if !reverify::confirms_violation(e, &tuple) && arity > 0 {
            return Err(CheckerError::VerificationFailed("identity-tuple witness".into()));
        }
        return Ok(Verdict::new(Outcome::Counterexample, cfg, 1, started)
            .with_witness(tuple_json(&tuple))
            .detail("ground_set", ground.name())
            .detail("arity", arity)
            .detail("prefilter", true)
            .detail("value", value.to_json()));
    }

    let (found, evaluations, tuples) = match cfg.mode {
        Mode::Exhaustive => {
            let set: Vec<Matrix<R>> = match ground {
                GroundSet::Units => h.enumerate_units(cfg.cap)?.collect(),
                _ => h.enumerate_elements(cfg.cap)?.collect(),
            };
            let base = set.len() as u64;
            let total = tuple_count(base, arity, cfg.cap).ok_or_else(|| MatrixError::CapExceeded {
                size: u128::from(base).checked_pow(arity as u32).unwrap_or(u128::MAX),
                cap: cfg.cap,
            })?;
            let (found, evals) = first_violation(total, cfg.workers, |i| {
                let tuple: Vec<Matrix<R>> = digits(i, base, arity).into_iter().map(|d| set[d].clone()).collect();
                let v = evaluate(e, &tuple)?;
                Ok((!v.is_zero()).then_some((tuple, v)))
            })?;
            (found, evals, Some(total))
        }
        Mode::Random => {
            let (found, evals) = first_violation(cfg.budget, cfg.workers, |i| {
                let mut rng = sample_rng(cfg.seed, i);
                let tuple = (0..arity)
                    .map(|_| match ground {
                        GroundSet::Units => h.sample_unit(&mut rng, UNIT_RETRIES),
                        _ => Ok(h.sample_element(&mut rng)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let v = evaluate(e, &tuple)?;
                Ok((!v.is_zero()).then_some((tuple, v)))
            })?;
            (found, evals, None)
        }
    };

    let mut verdict = match found {
        None => Verdict::new(Outcome::Holds, cfg, evaluations, started),
        Some(hit) => {
            let (tuple, value) = hit.item;
            if !reverify::confirms_violation(e, &tuple) {
                return Err(CheckerError::VerificationFailed(format!("witness at index {}", hit.index)));
            }
            Verdict::new(Outcome::Counterexample, cfg, evaluations, started)
                .with_witness(tuple_json(&tuple))
                .detail("witness_index", hit.index)
                .detail("value", value.to_json())
        }
    };
    verdict = verdict
        .detail("ground_set", ground.name())
        .detail("arity", arity)
        .detail("prefilter", false);
    if let Some(t) = tuples {
        verdict = verdict.detail("tuples", t);
    }
    Ok(verdict)
}

/// Checks `w(u₁, …, u_l) = I` over unit tuples.
pub fn check_group_identity<R: Ring>(
    h: &AlgebraHandle<R>,
    w: &FreeWord,
    cfg: &SearchConfig,
) -> Result<Verdict, CheckerError> {
    if w.is_identity() {
        return Ok(Verdict::new(Outcome::Holds, cfg, 0, Instant::now()).detail("word", "1"));
    }
    let e = gi_to_lpi(h.ring().clone(), w)?;
    Ok(check_lpi(h, &e, GroundSet::Units, cfg)?.detail("word", w.to_string()))
}

/// `S_{2n}` on `M_n(F_p)`.
pub fn al_verify(n: usize, p: u64, cfg: &SearchConfig) -> Result<Verdict, CheckerError> {
    let field = PrimeField::new(p)?;
    let h = AlgebraHandle::full(n, field)?;
    let e = standard_polynomial(field, 2 * n)?;
    check_lpi(&h, &e, GroundSet::Elements, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::amitsur_levitzki;
    use crate::matrix::Family;
    use crate::rings::Integers;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn amitsur_levitzki_lpi_on_units_of_m2_f2() {
        let h = AlgebraHandle::full(2, f(2)).unwrap();
        let e = amitsur_levitzki(f(2), 2).unwrap();
        let v = check_lpi(&h, &e, GroundSet::Auto, &SearchConfig::exhaustive()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert_eq!(v.stats.evaluations, 6u64.pow(4));
        assert_eq!(v.details["ground_set"], "units");
    }

    #[test]
    fn s3_fails_on_m2_f2_and_s2_holds_on_m1() {
        let h = AlgebraHandle::full(2, f(2)).unwrap();
        let s3 = standard_polynomial(f(2), 3).unwrap();
        let v = check_lpi(&h, &s3, GroundSet::Auto, &SearchConfig::exhaustive()).unwrap();
        assert_eq!(v.outcome, Outcome::Counterexample);
        let m1 = AlgebraHandle::full(1, f(2)).unwrap();
        let s2 = standard_polynomial(f(2), 2).unwrap();
        assert!(check_lpi(&m1, &s2, GroundSet::Auto, &SearchConfig::exhaustive()).unwrap().holds());
        // (e11, e12, e21) violates S3 as well
        let t = [Matrix::unit(f(2), 2, 1, 1), Matrix::unit(f(2), 2, 1, 2), Matrix::unit(f(2), 2, 2, 1)];
        assert!(reverify::confirms_violation(&s3, &t));
    }

    #[test]
    fn al_verify_small() {
        let v = al_verify(2, 2, &SearchConfig::exhaustive()).unwrap();
        assert!(v.holds());
        assert_eq!(v.stats.evaluations, 65_536);
        let r = al_verify(2, 101, &SearchConfig::random(9, 1000)).unwrap();
        assert!(r.holds());
        assert_eq!(r.stats.seed, Some(9));
    }

    #[test]
    fn group_identities_on_gl2_f2() {
        let h = AlgebraHandle::full(2, f(2)).unwrap();
        let x1 = FreeWord::generator(1);
        assert!(check_group_identity(&h, &x1.pow(6), &SearchConfig::exhaustive()).unwrap().holds());
        let v = check_group_identity(&h, &x1.pow(2), &SearchConfig::exhaustive()).unwrap();
        assert_eq!(v.outcome, Outcome::Counterexample);
        assert_eq!(v.witness.unwrap(), serde_json::json!([[[0, 1], [1, 1]]]));
        assert!(check_group_identity(&h, &FreeWord::identity(), &SearchConfig::exhaustive()).unwrap().holds());
    }

    #[test]
    fn prefilter_uses_identity_tuple() {
        let h = AlgebraHandle::full(2, Integers).unwrap();
        let e = LaurentElement::from_terms(
            Integers,
            [(FreeWord::identity(), Integers.from_i64(1)), (FreeWord::generator(1), Integers.from_i64(1))],
        );
        let v = check_lpi(&h, &e, GroundSet::Auto, &SearchConfig::random(1, 10)).unwrap();
        assert_eq!(v.outcome, Outcome::Counterexample);
        assert_eq!(v.details["prefilter"], true);
        assert_eq!(v.witness.unwrap(), serde_json::json!([[[1, 0], [0, 1]]]));
    }

    #[test]
    fn worker_count_does_not_change_exhaustive_verdicts() {
        let h = AlgebraHandle::new(Family::UpperTriangular, 2, f(3)).unwrap();
        let s2 = standard_polynomial(f(3), 2).unwrap();
        let one = check_lpi(&h, &s2, GroundSet::Auto, &SearchConfig::exhaustive()).unwrap();
        for w in [2, 3, 8] {
            let many = check_lpi(&h, &s2, GroundSet::Auto, &SearchConfig::exhaustive().with_workers(w)).unwrap();
            assert_eq!(many.witness, one.witness);
            assert_eq!(many.stats.evaluations, one.stats.evaluations);
        }
    }

    #[test]
    fn caps_and_refusals() {
        let h = AlgebraHandle::full(2, f(3)).unwrap();
        let s4 = standard_polynomial(f(3), 4).unwrap();
        assert!(matches!(
            check_lpi(&h, &s4, GroundSet::Auto, &SearchConfig::exhaustive().with_cap(1000)),
            Err(CheckerError::Matrix(MatrixError::CapExceeded { .. }))
        ));
        let e = amitsur_levitzki(f(3), 1).unwrap();
        assert!(matches!(
            check_lpi(&h, &e, GroundSet::Elements, &SearchConfig::exhaustive()),
            Err(CheckerError::Invalid(_))
        ));
    }
}
