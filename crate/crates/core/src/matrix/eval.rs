use std::collections::HashMap;

use super::{Matrix, MatrixError};
use crate::freegroup::FreeWord;
use crate::group_algebra::LaurentElement;
use crate::rings::{check_same, Ring};

/// Evaluates `e` at `xᵢ ↦ values[i-1]`. Inverses are computed once per
/// variable and only when a negative exponent appears.
pub fn evaluate<R: Ring>(e: &LaurentElement<R>, values: &[Matrix<R>]) -> Result<Matrix<R>, MatrixError> {
    let arity = e.arity() as usize;
    if values.len() < arity {
        return Err(MatrixError::MissingVariable {
            var: (values.len() + 1) as u32,
            provided: values.len(),
        });
    }
    let n = match values.first() {
        Some(m) => m.dim(),
        None => return Ok(constant_value(e, 1)),
    };
    for m in &values[..arity] {
        check_same(e.ring(), m.ring())?;
        if m.dim() != n {
            return Err(MatrixError::DimensionMismatch { left: n, right: m.dim() });
        }
    }
    let ring = e.ring().clone();
    let mut inverses: HashMap<u32, Matrix<R>> = HashMap::new();
    let mut acc = Matrix::zero(ring, n);
    for (word, c) in e.terms() {
        let w = evaluate_word(word, values, &mut inverses)?;
        acc = acc.add_unchecked(&w.scale(c));
    }
    Ok(acc)
}

fn constant_value<R: Ring>(e: &LaurentElement<R>, n: usize) -> Matrix<R> {
    let c = e.coefficient(&FreeWord::identity());
    Matrix::scalar(e.ring().clone(), n, c)
}

fn evaluate_word<R: Ring>(
    word: &FreeWord,
    values: &[Matrix<R>],
    inverses: &mut HashMap<u32, Matrix<R>>,
) -> Result<Matrix<R>, MatrixError> {
    let first = &values[0];
    let mut acc = Matrix::identity(first.ring().clone(), first.dim());
    for s in word.syllables() {
        let base = if s.exponent < 0 {
            match inverses.get(&s.generator) {
                Some(inv) => inv.clone(),
                None => {
                    let inv = values[s.generator as usize - 1]
                        .inverse()
                        .ok_or(MatrixError::NotAUnit { var: s.generator })?;
                    inverses.insert(s.generator, inv.clone());
                    inv
                }
            }
        } else {
            values[s.generator as usize - 1].clone()
        };
        acc = acc.mul_unchecked(&base.pow(s.exponent.unsigned_abs()));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{AlgebraHandle, DEFAULT_CAP};
    use crate::rings::{Integers, PrimeField, RingError};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: u32) -> FreeWord {
        FreeWord::generator(i)
    }

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn commutator_on_units() {
        let a = Matrix::from_i64_rows(Integers, &[&[1, 1], &[0, 1]]).unwrap();
        let b = Matrix::from_i64_rows(Integers, &[&[1, 0], &[1, 1]]).unwrap();
        let w = x(1).multiply(&x(2)).multiply(&x(1).inverse()).multiply(&x(2).inverse());
        let e = LaurentElement::word(Integers, w);
        let direct = a
            .mul(&b)
            .unwrap()
            .mul(&a.inverse().unwrap())
            .unwrap()
            .mul(&b.inverse().unwrap())
            .unwrap();
        assert_eq!(evaluate(&e, &[a, b]).unwrap(), direct);
    }

    #[test]
    fn errors() {
        let e = LaurentElement::word(Integers, x(2).inverse());
        let i = Matrix::identity(Integers, 2);
        let sing = Matrix::from_i64_rows(Integers, &[&[2, 0], &[0, 1]]).unwrap();
        assert!(matches!(
            evaluate(&e, std::slice::from_ref(&i)),
            Err(MatrixError::MissingVariable { var: 2, provided: 1 })
        ));
        assert_eq!(evaluate(&e, &[i.clone(), sing]), Err(MatrixError::NotAUnit { var: 2 }));
        let g = LaurentElement::word(f(3), x(1));
        assert!(matches!(
            evaluate(&g, &[Matrix::identity(f(5), 2)]),
            Err(MatrixError::Ring(RingError::Mismatch { .. }))
        ));
        let h = LaurentElement::word(Integers, x(1).multiply(&x(2)));
        assert!(matches!(
            evaluate(&h, &[i, Matrix::identity(Integers, 3)]),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nonnegative_words_accept_singular_values() {
        let e = LaurentElement::from_terms(Integers, [(x(1).pow(2), Integers.from_i64(1)), (FreeWord::identity(), Integers.from_i64(-3))]);
        let a = Matrix::unit(Integers, 2, 1, 2);
        assert_eq!(evaluate(&e, &[a]).unwrap(), Matrix::scalar(Integers, 2, Integers.from_i64(-3)));
    }

    #[test]
    fn seeded_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for (n, p) in [(2, 101u64), (3, 101), (3, 2), (4, 7)] {
            let h = AlgebraHandle::full(n, f(p)).unwrap();
            for _ in 0..250 {
                let u = h.sample_unit(&mut rng, 1000).unwrap();
                let inv = u.inverse().unwrap();
                assert!(u.mul(&inv).unwrap().is_identity());
                assert!(inv.mul(&u).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn group_word_values_are_units_on_gl2_f3() {
        let h = AlgebraHandle::full(2, f(3)).unwrap();
        let units: Vec<_> = h.enumerate_units(DEFAULT_CAP).unwrap().collect();
        let w = x(1).pow(-2).multiply(&x(2)).multiply(&x(1));
        let e = LaurentElement::word(f(3), w);
        for a in units.iter().step_by(5) {
            for b in units.iter().step_by(7) {
                let v = evaluate(&e, &[a.clone(), b.clone()]).unwrap();
                assert!(v.inverse().is_some());
            }
        }
    }

    fn small_word() -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((1u32..=2, -2i64..=2), 0..5).prop_map(|syl| {
            syl.into_iter()
                .fold(FreeWord::identity(), |w, (g, k)| w.multiply(&x(g).pow(k)))
        })
    }

    fn small_element() -> impl Strategy<Value = LaurentElement<PrimeField>> {
        prop::collection::vec((small_word(), 0i64..5), 0..4)
            .prop_map(|terms| LaurentElement::from_terms(f(5), terms.into_iter().map(|(w, c)| (w, f(5).from_i64(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn evaluation_is_a_homomorphism(a in small_element(), b in small_element(), seed in any::<u64>()) {
            let h = AlgebraHandle::full(2, f(5)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vals = vec![h.sample_unit(&mut rng, 1000).unwrap(), h.sample_unit(&mut rng, 1000).unwrap()];
            let ea = evaluate(&a, &vals).unwrap();
            let eb = evaluate(&b, &vals).unwrap();
            prop_assert_eq!(evaluate(&a.add(&b).unwrap(), &vals).unwrap(), ea.add(&eb).unwrap());
            prop_assert_eq!(evaluate(&a.mul(&b).unwrap(), &vals).unwrap(), ea.mul(&eb).unwrap());
        }
    }
}
