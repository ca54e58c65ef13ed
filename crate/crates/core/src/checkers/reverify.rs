//! A second evaluator used to confirm counterexamples. It works on plain
//! row vectors with schoolbook products and Laplace-expansion inverses, and
//! shares nothing with the search path except ring arithmetic.

use crate::group_algebra::LaurentElement;
use crate::matrix::Matrix;
use crate::rings::Ring;

type Rows<E> = Vec<Vec<E>>;

fn identity<R: Ring>(ring: &R, n: usize) -> Rows<R::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

fn product<R: Ring>(ring: &R, a: &Rows<R::Elem>, b: &Rows<R::Elem>) -> Rows<R::Elem> {
    let n = a.len();
    let mut out = vec![vec![ring.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = ring.zero();
            for k in 0..n {
                s = ring.add(&s, &ring.mul(&a[i][k], &b[k][j]));
            }
            out[i][j] = s;
        }
    }
    out
}

fn laplace_det<R: Ring>(ring: &R, a: &Rows<R::Elem>) -> R::Elem {
    let n = a.len();
    if n == 0 {
        return ring.one();
    }
    let mut det = ring.zero();
    for j in 0..n {
        if ring.is_zero(&a[0][j]) {
            continue;
        }
        let term = ring.mul(&a[0][j], &laplace_det(ring, &strike(a, 0, j)));
        det = if j % 2 == 0 { ring.add(&det, &term) } else { ring.sub(&det, &term) };
    }
    det
}

fn strike<E: Clone>(a: &Rows<E>, row: usize, col: usize) -> Rows<E> {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
        .collect()
}

fn adjugate_inverse<R: Ring>(ring: &R, a: &Rows<R::Elem>) -> Option<Rows<R::Elem>> {
    let n = a.len();
    let det_inv = ring.try_inverse(&laplace_det(ring, a))?;
    let mut out = vec![vec![ring.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = laplace_det(ring, &strike(a, i, j));
            let c = if (i + j) % 2 == 0 { c } else { ring.neg(&c) };
            out[j][i] = ring.mul(&c, &det_inv);
        }
    }
    Some(out)
}

/// Evaluates `e` at the given matrices. `None` when a negative exponent meets
/// a non-unit or a variable is unassigned.
pub fn evaluate<R: Ring>(e: &LaurentElement<R>, values: &[Matrix<R>]) -> Option<Rows<R::Elem>> {
    let ring = e.ring();
    let n = values.first().map_or(1, |m| m.dim());
    let rows: Vec<Rows<R::Elem>> = values.iter().map(|m| m.rows()).collect();
    let mut acc = vec![vec![ring.zero(); n]; n];
    for (word, c) in e.terms() {
        let mut t = identity(ring, n);
        for s in word.syllables() {
            let base = rows.get(s.generator as usize - 1)?;
            let factor = if s.exponent < 0 { adjugate_inverse(ring, base)? } else { base.clone() };
            for _ in 0..s.exponent.unsigned_abs() {
                t = product(ring, &t, &factor);
            }
        }
        for i in 0..n {
            for j in 0..n {
                acc[i][j] = ring.add(&acc[i][j], &ring.mul(c, &t[i][j]));
            }
        }
    }
    Some(acc)
}

pub fn is_zero<R: Ring>(ring: &R, a: &Rows<R::Elem>) -> bool {
    a.iter().flatten().all(|x| ring.is_zero(x))
}

/// `true` when `e` evaluates to a nonzero matrix at `values`.
pub fn confirms_violation<R: Ring>(e: &LaurentElement<R>, values: &[Matrix<R>]) -> bool {
    evaluate(e, values).is_some_and(|v| !is_zero(e.ring(), &v))
}

/// `aᵏ` by repeated schoolbook products.
pub fn power<R: Ring>(m: &Matrix<R>, k: u64) -> Rows<R::Elem> {
    let ring = m.ring();
    let rows = m.rows();
    let mut t = identity(ring, m.dim());
    for _ in 0..k {
        t = product(ring, &t, &rows);
    }
    t
}

/// `a·b` by schoolbook product.
pub fn multiply<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Rows<R::Elem> {
    product(a.ring(), &a.rows(), &b.rows())
}

/// `(m₁ ⋯ m_k)ᵉ`.
pub fn chain_power<R: Ring>(ms: &[&Matrix<R>], e: u64) -> Rows<R::Elem> {
    let ring = ms[0].ring();
    let n = ms[0].dim();
    let p = ms.iter().fold(identity(ring, n), |acc, m| product(ring, &acc, &m.rows()));
    let mut t = identity(ring, n);
    for _ in 0..e {
        t = product(ring, &t, &p);
    }
    t
}
