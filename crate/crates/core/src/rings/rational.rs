use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, Ring, RingSpec};

/// The rationals, always in lowest terms with a positive denominator
/// (`BigRational` normalizes on construction).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Rationals {
    /// Builds `numer / denom` in lowest terms. Panics on a zero denominator.
    pub fn fraction(&self, numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> BigRational {
        BigRational::new(numer.into(), denom.into())
    }
}

impl Ring for Rationals {
    type Elem = BigRational;
    type Frac = Rationals;

    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_integer(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn try_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn integer_value(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn fraction_field(&self) -> Rationals {
        Rationals
    }

    fn to_fraction(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn from_fraction(&self, f: &BigRational) -> Option<BigRational> {
        Some(f.clone())
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn is_field(&self) -> bool {
        true
    }

    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
}

impl Field for Rationals {}
