use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Field, Ring, RingError, RingSpec};

const MODULUS_LIMIT: u64 = 1 << 31;

/// Deterministic Miller-Rabin; bases {2, 7, 61} are exact below 4,759,123,141.
pub fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let n64 = u64::from(n);
    let mut d = n64 - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        if a % n64 == 0 {
            continue;
        }
        let mut x = pow_mod(a % n64, d, n64);
        if x == 1 || x == n64 - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n64;
            if x == n64 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// The prime field `F_p` with `2 <= p < 2^31`. Elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if !(2..MODULUS_LIMIT).contains(&p) {
            return Err(RingError::ModulusOutOfRange(p));
        }
        let p32 = p as u32;
        if !is_prime_u32(p32) {
            return Err(RingError::NotPrime(p));
        }
        Ok(PrimeField { p: p32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    pub fn element(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            residue: self.reduce_i64(v),
            modulus: self.p,
        }
    }
}

impl Ring for PrimeField {
    type Elem = u32;
    type Frac = PrimeField;

    fn spec(&self) -> RingSpec {
        RingSpec::PrimeField(self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_integer(&self, v: &BigInt) -> u32 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u32()
            .expect("residue below modulus")
    }

    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = u64::from(*a) + u64::from(*b);
        let p = u64::from(self.p);
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (u64::from(*a) + u64::from(self.p) - u64::from(*b)) as u32
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (u64::from(*a) * u64::from(*b) % u64::from(self.p)) as u32
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn try_inverse(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(pow_mod(u64::from(*a), u64::from(self.p) - 2, u64::from(self.p)) as u32)
    }

    fn integer_value(&self, a: &u32) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }

    fn order(&self) -> Option<u64> {
        Some(u64::from(self.p))
    }

    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.p).collect())
    }

    fn fraction_field(&self) -> PrimeField {
        *self
    }

    fn to_fraction(&self, a: &u32) -> u32 {
        *a
    }

    fn from_fraction(&self, f: &u32) -> Option<u32> {
        Some(*f)
    }

    fn format(&self, a: &u32) -> String {
        a.to_string()
    }

    fn is_field(&self) -> bool {
        true
    }
}

impl Field for PrimeField {}

/// A residue that carries its own modulus, for callers working with loose
/// values rather than through a [`PrimeField`] descriptor. Mixed-modulus
/// operations fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    residue: u32,
    modulus: u32,
}

impl PrimeFieldElement {
    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    fn same_field(&self, other: &Self) -> Result<PrimeField, RingError> {
        if self.modulus == other.modulus {
            Ok(self.field())
        } else {
            Err(RingError::Mismatch {
                left: RingSpec::PrimeField(self.modulus),
                right: RingSpec::PrimeField(other.modulus),
            })
        }
    }

    fn with(&self, residue: u32) -> Self {
        PrimeFieldElement {
            residue,
            modulus: self.modulus,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        let f = self.same_field(other)?;
        Ok(self.with(f.add(&self.residue, &other.residue)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        let f = self.same_field(other)?;
        Ok(self.with(f.sub(&self.residue, &other.residue)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        let f = self.same_field(other)?;
        Ok(self.with(f.mul(&self.residue, &other.residue)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field().neg(&self.residue))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.field().try_inverse(&self.residue).map(|r| self.with(r))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with(self.field().pow(&self.residue, exp))
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}
