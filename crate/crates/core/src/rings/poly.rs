use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use super::{check_same, Field, Ring, RingError};

/// Degree of a univariate polynomial. The zero polynomial has degree
/// `MinusInfinity`, which sorts below every finite degree and absorbs
/// addition, so `deg(f*g) = deg f + deg g` holds without special cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::MinusInfinity, Degree::MinusInfinity) => Ordering::Equal,
            (Degree::MinusInfinity, _) => Ordering::Less,
            (_, Degree::MinusInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An associative algebra with identity over a coefficient ring, as far as
/// polynomial evaluation needs it.
pub trait UnitalAlgebra: Clone {
    type Scalars: Ring;

    fn scalars(&self) -> &Self::Scalars;
    /// The identity of the algebra `self` lives in.
    fn unit_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn alg_add(&self, other: &Self) -> Self;
    fn alg_mul(&self, other: &Self) -> Self;
    fn alg_scale(&self, c: &<Self::Scalars as Ring>::Elem) -> Self;
}

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `X^i`.
/// The leading stored coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn from_i64s(ring: R, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| ring.from_i64(v)).collect();
        Self::new(ring, c)
    }

    pub fn zero(ring: R) -> Self {
        UniPoly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    /// `c * X^k`
    pub fn monomial(ring: R, c: R::Elem, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k];
        coeffs.push(c);
        Self::new(ring, coeffs)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ring.is_one(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        check_same(&self.ring, &other.ring)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.ring.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Self::new(self.ring.clone(), c))
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        check_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring.clone()));
        }
        let r = &self.ring;
        let mut c = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = r.add(&c[i + j], &r.mul(a, b));
            }
        }
        Ok(Self::new(r.clone(), c))
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.mul(a, k)).collect();
        Self::new(self.ring.clone(), c)
    }

    /// Horner evaluation at a scalar.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    /// `Σ gᵢ vⁱ` with `v⁰` the identity of `v`'s algebra. Coefficients are
    /// mapped through the canonical embedding into the algebra's scalars.
    pub fn evaluate<A: UnitalAlgebra>(&self, v: &A) -> Result<A, RingError> {
        let target = v.scalars().clone();
        let mut acc = v.zero_like();
        let unit = v.unit_like();
        for c in self.coeffs.iter().rev() {
            let c = target.embed(&self.ring, c)?;
            acc = acc.alg_mul(v).alg_add(&unit.alg_scale(&c));
        }
        Ok(acc)
    }

    /// Maps every coefficient through the canonical embedding into `target`.
    pub fn embed_into<T: Ring>(&self, target: &T) -> Result<UniPoly<T>, RingError> {
        let c = self
            .coeffs
            .iter()
            .map(|a| target.embed(&self.ring, a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(target.clone(), c))
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let r = &self.ring;
        let one = r.one();
        let minus_one = r.neg(&one);
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if r.is_zero(c) {
                continue;
            }
            let text = r.format(c);
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
            let unit_coeff = *c == one || (*c == minus_one && negative);
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !unit_coeff {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl<F: Field> UniPoly<F> {
    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    /// Returns `None` for a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let f = &self.ring;
        let lead_inv = f.inv(divisor.leading()?)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("X"))
    }
}
