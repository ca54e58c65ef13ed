use std::collections::HashMap;

use serde::Serialize;

use super::CheckerError;
use crate::matrix::{AlgebraHandle, Matrix};
use crate::rings::{Degree, Ring, UniPoly};

/// A polynomial killing every product `ab` with `a² = b² = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Annihilator<R: Ring> {
    pub g: UniPoly<R>,
    /// `(r, t)` for each factor `Xʳ − Xᵗ` of `g`, in element order.
    pub factors: Vec<(u32, u32)>,
    /// Square-zero pairs `g(ab) = 0` was verified on.
    pub pairs_checked: u64,
}

/// Least `t ≥ 1`, then least `r > t`, with `xʳ = xᵗ`.
fn power_cycle<R: Ring>(x: &Matrix<R>) -> (u32, u32) {
    let mut seen: HashMap<Matrix<R>, u32> = HashMap::new();
    let mut p = x.clone();
    let mut k = 1;
    loop {
        if let Some(&t) = seen.get(&p) {
            return (k, t);
        }
        let next = p.mul_unchecked(x);
        seen.insert(p, k);
        p = next;
        k += 1;
    }
}

/// `g = ∏ (Xʳ − Xᵗ)` over the elements of a finite algebra, with repeated
/// factors merged unless `keep_duplicates` is set. The result is checked
/// against every square-zero pair before it is returned.
pub fn finite_annihilator<R: Ring>(
    h: &AlgebraHandle<R>,
    keep_duplicates: bool,
    cap: u64,
) -> Result<Annihilator<R>, CheckerError> {
    let ring = h.ring().clone();
    let mut factors = Vec::new();
    for x in h.enumerate_elements(cap)? {
        let rt = power_cycle(&x);
        if keep_duplicates || !factors.contains(&rt) {
            factors.push(rt);
        }
    }
    let mut g = UniPoly::constant(ring.clone(), ring.one());
    for &(r, t) in &factors {
        let mut c = vec![ring.zero(); r as usize + 1];
        c[r as usize] = ring.one();
        c[t as usize] = ring.neg(&ring.one());
        g = g.mul(&UniPoly::new(ring.clone(), c))?;
    }
    if g.is_zero() {
        return Err(CheckerError::VerificationFailed("annihilator is zero".into()));
    }
    let square_zero: Vec<Matrix<R>> = h.enumerate_square_zero(cap)?.collect();
    for a in &square_zero {
        for b in &square_zero {
            if !g.evaluate(&a.mul_unchecked(b))?.is_zero() {
                return Err(CheckerError::VerificationFailed(format!("g(ab) != 0 for a = {a}, b = {b}")));
            }
        }
    }
    let pairs_checked = (square_zero.len() * square_zero.len()) as u64;
    Ok(Annihilator { g, factors, pairs_checked })
}

/// A square-zero pair in `M₂(R)` with `g(ab) ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareZeroPair<R: Ring> {
    pub a: Matrix<R>,
    pub b: Matrix<R>,
    pub t: R::Elem,
    /// Values of `t` tried, `0, 1, …`.
    pub trials: u64,
    pub value: Matrix<R>,
}

/// Scans `a = e₂₁`, `b = t·e₁₂` for `t = 0, 1, 2, …`. Then `ab = t·e₂₂` and
/// `g(ab) = diag(g(0), g(t))`, so a domain with more than `deg g` elements
/// gives a hit within `deg g + 1` trials.
pub fn infinite_counterexample<R: Ring>(g: &UniPoly<R>) -> Result<SquareZeroPair<R>, CheckerError> {
    let Degree::Finite(deg) = g.degree() else {
        return Err(CheckerError::Invalid("g must be nonzero".into()));
    };
    let ring = g.ring().clone();
    let a = Matrix::unit(ring.clone(), 2, 2, 1);
    let e12 = Matrix::unit(ring.clone(), 2, 1, 2);
    let limit = deg as u64 + 1;
    for trial in 0..limit {
        if ring.order().is_some_and(|q| trial >= q) {
            break;
        }
        let t = ring.from_i64(trial as i64);
        let b = e12.scale(&t);
        let value = g.evaluate(&a.mul(&b)?)?;
        if !value.is_zero() {
            let sq = a.mul(&a)?.is_zero() && b.mul(&b)?.is_zero();
            if !sq {
                return Err(CheckerError::VerificationFailed("pair is not square-zero".into()));
            }
            return Ok(SquareZeroPair { a, b, t, trials: trial + 1, value });
        }
    }
    Err(CheckerError::Invalid(format!(
        "g vanishes at every trial value 0..{limit}; the coefficient ring is too small"
    )))
}

/// `|K| ≤ 2d` and the largest `n` with `n ≤ 2·log_q(2d) + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub d: u64,
    pub q: u64,
    pub max_field_size: u64,
    pub max_n: u64,
}

/// Integer-only: `max_n = 2 + max{k : qᵏ ≤ (2d)²}`.
pub fn bounds_from_d(d: u64, q: Option<u64>) -> Result<Bounds, CheckerError> {
    let q = q.unwrap_or(2);
    if d == 0 {
        return Err(CheckerError::Invalid("d must be at least 1".into()));
    }
    if q < 2 {
        return Err(CheckerError::Invalid("q must be at least 2".into()));
    }
    let two_d = u128::from(d) * 2;
    let target = two_d * two_d;
    let mut k = 0u64;
    let mut power = u128::from(q);
    while power <= target {
        k += 1;
        power *= u128::from(q);
    }
    Ok(Bounds { d, q, max_field_size: 2 * d, max_n: k + 2 })
}
