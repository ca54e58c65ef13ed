//! Exact coefficient rings.
//!
//! Every structure in the crate is generic over a [`Ring`] descriptor. The
//! descriptor carries whatever context the arithmetic needs (the modulus of a
//! prime field, for instance) and elements are plain values. Two containers
//! with different descriptors never mix: containers compare descriptors and
//! reject mismatches with [`RingError::Mismatch`].

mod integer;
pub mod linalg;
mod poly;
mod prime_field;
mod rational;
mod vandermonde;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use integer::Integers;
pub use poly::{Degree, UniPoly, UnitalAlgebra};
pub use prime_field::{is_prime_u32, PrimeField, PrimeFieldElement};
pub use rational::Rationals;
pub use vandermonde::vandermonde_solve;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("coefficient ring mismatch: {left} vs {right}")]
    Mismatch { left: RingSpec, right: RingSpec },
    #[error("no canonical embedding of {from} into {into}")]
    NoEmbedding { from: RingSpec, into: RingSpec },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),
    #[error("unknown ring literal {0:?} (expected ZZ or Fp:<prime>)")]
    UnknownLiteral(String),
    #[error("repeated interpolation point")]
    RepeatedPoint,
    #[error("need at least {needed} distinct points but the field has only {order} elements")]
    FieldTooSmall { needed: usize, order: u64 },
    #[error("interpolation data is malformed: {0}")]
    Malformed(String),
    #[error("solved component is not representable in {0}")]
    NotRepresentable(RingSpec),
}

/// Runtime name of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    PrimeField(u32),
    Rationals,
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "ZZ"),
            RingSpec::PrimeField(p) => write!(f, "Fp:{p}"),
            RingSpec::Rationals => write!(f, "QQ"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    /// Accepts `ZZ` and `Fp:<prime>`; the prime is checked deterministically.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "ZZ" {
            return Ok(RingSpec::Integers);
        }
        let Some(rest) = s.strip_prefix("Fp:") else {
            return Err(RingError::UnknownLiteral(s.to_string()));
        };
        let p: u64 = rest
            .parse()
            .map_err(|_| RingError::UnknownLiteral(s.to_string()))?;
        PrimeField::new(p).map(|f| RingSpec::PrimeField(f.modulus()))
    }
}

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync;
    /// Field of fractions (a field is its own).
    type Frac: Field;

    fn spec(&self) -> RingSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_integer(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse when `a` is a unit of this ring.
    fn try_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The element as an integer, when it is one. Prime-field residues map to
    /// their representative in `[0, p)`.
    fn integer_value(&self, a: &Self::Elem) -> Option<BigInt>;
    /// Number of elements, `None` for infinite rings.
    fn order(&self) -> Option<u64>;
    /// All elements in ascending residue order, for finite rings.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn fraction_field(&self) -> Self::Frac;
    fn to_fraction(&self, a: &Self::Elem) -> <Self::Frac as Ring>::Elem;
    fn from_fraction(&self, f: &<Self::Frac as Ring>::Elem) -> Option<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(v))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn is_field(&self) -> bool {
        false
    }

    /// JSON form used in reports: integers as numbers when they fit, text otherwise.
    fn to_json(&self, a: &Self::Elem) -> serde_json::Value {
        match self.integer_value(a).and_then(|v| i64::try_from(v).ok()) {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(self.format(a)),
        }
    }

    /// Image of `x` from `src` under the canonical map, if one exists.
    /// `ZZ` maps into every ring; every other ring only into itself.
    fn embed<S: Ring>(&self, src: &S, x: &S::Elem) -> Result<Self::Elem, RingError> {
        let from = src.spec();
        let into = self.spec();
        if from == RingSpec::Integers || from == into {
            if let Some(v) = src.integer_value(x) {
                return Ok(self.from_integer(&v));
            }
            if let Some(f) = src.as_rational(x).and_then(|q| self.from_rational(&q)) {
                return Ok(f);
            }
        }
        Err(RingError::NoEmbedding { from, into })
    }

    /// The element as a rational number; only characteristic-zero rings answer.
    fn as_rational(&self, _a: &Self::Elem) -> Option<BigRational> {
        None
    }

    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        q.is_integer().then(|| self.from_integer(q.numer()))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.try_inverse(a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

pub(crate) fn check_same<R: Ring>(a: &R, b: &R) -> Result<(), RingError> {
    if a == b {
        Ok(())
    } else {
        Err(RingError::Mismatch {
            left: a.spec(),
            right: b.spec(),
        })
    }
}

/// Runs `$body` with `$ring` bound to the concrete descriptor named by `$spec`.
///
/// The body is monomorphized once per ring kind, so it may use the generic API
/// freely.
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, |$ring:ident| $body:expr) => {{
        match $spec {
            $crate::rings::RingSpec::Integers => {
                let $ring = $crate::rings::Integers;
                $body
            }
            $crate::rings::RingSpec::PrimeField(p) => {
                let $ring = $crate::rings::PrimeField::new(u64::from(p))
                    .expect("RingSpec holds a validated prime");
                $body
            }
            $crate::rings::RingSpec::Rationals => {
                let $ring = $crate::rings::Rationals;
                $body
            }
        }
    }};
}

/// Renders `Σ cᵢ·bᵢ` in the textual grammar: `c*b` terms joined by ` + ` or
/// ` - `, unit coefficients elided, `0` for the empty sum. `basis` yields the
/// printed basis element, or `None` for the identity.
pub(crate) fn format_combination<'a, R, I>(ring: &R, terms: I) -> String
where
    R: Ring,
    I: IntoIterator<Item = (Option<String>, &'a R::Elem)>,
{
    let mut out = String::new();
    for (basis, c) in terms {
        let text = ring.format(c);
        let (negative, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match basis {
            None => out.push_str(&mag),
            Some(b) if mag == "1" => out.push_str(&b),
            Some(b) => {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&b);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
