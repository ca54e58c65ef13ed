use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Rationals, Ring, RingSpec};

/// The integers `ZZ`, arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    type Frac = Rationals;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_integer(&self, v: &BigInt) -> BigInt {
        v.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn try_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }

    fn integer_value(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Option<Vec<BigInt>> {
        None
    }

    fn fraction_field(&self) -> Rationals {
        Rationals
    }

    fn to_fraction(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }

    fn from_fraction(&self, f: &BigRational) -> Option<BigInt> {
        f.is_integer().then(|| f.to_integer())
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn as_rational(&self, a: &BigInt) -> Option<BigRational> {
        Some(BigRational::from_integer(a.clone()))
    }
}
