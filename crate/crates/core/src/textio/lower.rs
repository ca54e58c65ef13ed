//! Lowering parse trees to algebra elements.

use thiserror::Error;

use super::expr::{parse, Expr, Macro, ParseError, Var};
use crate::freegroup::FreeWord;
use crate::group_algebra::{amitsur_levitzki, standard_polynomial, GroupAlgebraError, LaurentElement};
use crate::quotient::{q_unit_from_elements, QuotientElement, QuotientError};
use crate::rings::{Ring, RingError, UniPoly};

/// Repeated multiplication of a multi-term element is refused past this.
pub const MAX_EXPANSION_EXPONENT: u32 = 64;

/// A product whose term count could exceed this is refused before expanding.
pub const MAX_TERMS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    GroupAlgebra(#[from] GroupAlgebraError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

fn unsupported(msg: impl Into<String>) -> LowerError {
    LowerError::Unsupported(msg.into())
}

fn check_size(left: usize, right: usize) -> Result<(), LowerError> {
    if left.saturating_mul(right) > MAX_TERMS {
        return Err(unsupported(format!(
            "product of {left} and {right} terms could exceed {MAX_TERMS} terms"
        )));
    }
    Ok(())
}

fn laurent_mul<R: Ring>(a: &LaurentElement<R>, b: &LaurentElement<R>) -> Result<LaurentElement<R>, LowerError> {
    check_size(a.len(), b.len())?;
    Ok(a.mul(b)?)
}

fn check_exponent(k: i32, single_term: bool) -> Result<(), LowerError> {
    if !single_term && k.unsigned_abs() > MAX_EXPANSION_EXPONENT {
        return Err(unsupported(format!(
            "exponent {k} on a sum would expand too far (limit {MAX_EXPANSION_EXPONENT})"
        )));
    }
    Ok(())
}

/// Lowers to the group algebra over `ring`; variables are `x1..x8`.
pub fn to_laurent<R: Ring>(ring: &R, e: &Expr) -> Result<LaurentElement<R>, LowerError> {
    Ok(match e {
        Expr::Int(v) => LaurentElement::constant(ring.clone(), ring.from_integer(v)),
        Expr::Var(Var::Indexed(i)) => LaurentElement::word(ring.clone(), FreeWord::generator(*i)),
        Expr::Var(v) => {
            return Err(unsupported(format!(
                "variable {} belongs to quotient expressions; use x1..x8",
                if *v == Var::X { "x" } else { "y" }
            )))
        }
        Expr::Macro(Macro::Standard, n) => standard_polynomial(ring.clone(), *n as usize)?,
        Expr::Macro(Macro::AmitsurLevitzki, n) => amitsur_levitzki(ring.clone(), *n as usize)?,
        Expr::Neg(a) => to_laurent(ring, a)?.neg(),
        Expr::Add(a, b) => to_laurent(ring, a)?.add(&to_laurent(ring, b)?)?,
        Expr::Sub(a, b) => to_laurent(ring, a)?.sub(&to_laurent(ring, b)?)?,
        Expr::Mul(a, b) => laurent_mul(&to_laurent(ring, a)?, &to_laurent(ring, b)?)?,
        Expr::Pow(a, k) => laurent_pow(ring, &to_laurent(ring, a)?, *k)?,
    })
}

fn laurent_pow<R: Ring>(ring: &R, base: &LaurentElement<R>, k: i32) -> Result<LaurentElement<R>, LowerError> {
    let single = base.len() == 1;
    if single {
        let (w, c) = base.terms().next().expect("one term");
        let c = if k < 0 {
            let inv = ring
                .try_inverse(c)
                .ok_or_else(|| unsupported(format!("coefficient {} is not invertible", ring.format(c))))?;
            ring.pow(&inv, u64::from(k.unsigned_abs()))
        } else {
            ring.pow(c, u64::from(k.unsigned_abs()))
        };
        return Ok(LaurentElement::monomial(ring.clone(), c, w.pow(i64::from(k))));
    }
    if k < 0 {
        return Err(unsupported(format!("cannot invert {base}, which is not a single term")));
    }
    check_exponent(k, false)?;
    let mut acc = LaurentElement::one(ring.clone());
    for _ in 0..k {
        acc = laurent_mul(&acc, base)?;
    }
    Ok(acc)
}

/// Lowers to `R⟨x, y⟩/(x², y²)`. A negative exponent is accepted on `1 + c·x`
/// or `1 + c·y`, whose inverse is certified.
pub fn to_quotient<R: Ring>(ring: &R, e: &Expr) -> Result<QuotientElement<R>, LowerError> {
    Ok(match e {
        Expr::Int(v) => QuotientElement::constant(ring.clone(), ring.from_integer(v)),
        Expr::Var(Var::X) => QuotientElement::x(ring.clone()),
        Expr::Var(Var::Y) => QuotientElement::y(ring.clone()),
        Expr::Var(Var::Indexed(i)) => {
            return Err(unsupported(format!("quotient expressions use x and y, not x{i}")))
        }
        Expr::Macro(..) => return Err(unsupported("macros are not available in quotient expressions")),
        Expr::Neg(a) => to_quotient(ring, a)?.neg(),
        Expr::Add(a, b) => to_quotient(ring, a)?.add(&to_quotient(ring, b)?)?,
        Expr::Sub(a, b) => to_quotient(ring, a)?.sub(&to_quotient(ring, b)?)?,
        Expr::Mul(a, b) => to_quotient(ring, a)?.mul(&to_quotient(ring, b)?)?,
        Expr::Pow(a, k) => {
            let base = to_quotient(ring, a)?;
            let base = if *k < 0 {
                q_unit_from_elements(ring.clone(), &[base])?.inverse().clone()
            } else {
                base
            };
            check_exponent(*k, base.support_size() <= 1)?;
            base.pow(u64::from(k.unsigned_abs()))
        }
    })
}

/// Lowers to a polynomial in `x` with non-negative exponents.
pub fn to_polynomial<R: Ring>(ring: &R, e: &Expr) -> Result<UniPoly<R>, LowerError> {
    Ok(match e {
        Expr::Int(v) => UniPoly::constant(ring.clone(), ring.from_integer(v)),
        Expr::Var(Var::X) => UniPoly::monomial(ring.clone(), ring.one(), 1),
        Expr::Var(_) | Expr::Macro(..) => return Err(unsupported("polynomials use the single variable x")),
        Expr::Neg(a) => to_polynomial(ring, a)?.neg(),
        Expr::Add(a, b) => to_polynomial(ring, a)?.add(&to_polynomial(ring, b)?)?,
        Expr::Sub(a, b) => to_polynomial(ring, a)?.sub(&to_polynomial(ring, b)?)?,
        Expr::Mul(a, b) => to_polynomial(ring, a)?.mul(&to_polynomial(ring, b)?)?,
        Expr::Pow(a, k) => {
            if *k < 0 {
                return Err(unsupported("negative exponents are not allowed in polynomials"));
            }
            let base = to_polynomial(ring, a)?;
            check_exponent(*k, base.coeffs().iter().filter(|c| !ring.is_zero(c)).count() <= 1)?;
            check_size(base.coeffs().len(), *k as usize)?;
            let mut acc = UniPoly::constant(ring.clone(), ring.one());
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            acc
        }
    })
}

pub fn parse_laurent<R: Ring>(ring: &R, text: &str) -> Result<LaurentElement<R>, LowerError> {
    to_laurent(ring, &parse(text)?)
}

pub fn parse_quotient<R: Ring>(ring: &R, text: &str) -> Result<QuotientElement<R>, LowerError> {
    to_quotient(ring, &parse(text)?)
}

pub fn parse_polynomial<R: Ring>(ring: &R, text: &str) -> Result<UniPoly<R>, LowerError> {
    to_polynomial(ring, &parse(text)?)
}

/// A free-group word: a single term with coefficient 1.
pub fn parse_word(text: &str) -> Result<FreeWord, LowerError> {
    let e = parse_laurent(&crate::rings::Integers, text)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if *c == 1.into() => Ok(w.clone()),
        _ => Err(unsupported(format!("{text:?} is not a group word"))),
    }
}
