//! Gaussian elimination over an exact field.
//!
//! Matrices here are plain row vectors; the typed `Matrix` in
//! `crate::matrix` delegates to these routines after embedding into the
//! fraction field.

use super::Field;

type Rows<E> = Vec<Vec<E>>;

/// Solves `a * x = b` for square nonsingular `a`, where `b` has one row per
/// equation and any number of right-hand-side columns. `None` when singular.
pub fn solve<F: Field>(field: &F, mut a: Rows<F::Elem>, mut b: Rows<F::Elem>) -> Option<Rows<F::Elem>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "solve needs a square system");
    assert_eq!(b.len(), n, "one right-hand side row per equation");
    for col in 0..n {
        let pivot = (col..n).find(|&r| !field.is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = field.inv(&a[col][col])?;
        for v in a[col].iter_mut() {
            *v = field.mul(v, &inv);
        }
        for v in b[col].iter_mut() {
            *v = field.mul(v, &inv);
        }
        for r in 0..n {
            if r == col || field.is_zero(&a[r][col]) {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let t = field.mul(&factor, &a[col][c]);
                a[r][c] = field.sub(&a[r][c], &t);
            }
            for c in 0..b[r].len() {
                let t = field.mul(&factor, &b[col][c]);
                b[r][c] = field.sub(&b[r][c], &t);
            }
        }
    }
    Some(b)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(field: &F, a: Rows<F::Elem>) -> Option<Rows<F::Elem>> {
    let n = a.len();
    let id = (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    solve(field, a, id)
}

/// Determinant by elimination.
pub fn determinant<F: Field>(field: &F, mut a: Rows<F::Elem>) -> F::Elem {
    let n = a.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
            return field.zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[col][col]);
        let inv = field.inv(&a[col][col]).expect("pivot is nonzero");
        for r in col + 1..n {
            if field.is_zero(&a[r][col]) {
                continue;
            }
            let factor = field.mul(&a[r][col], &inv);
            for c in col..n {
                let t = field.mul(&factor, &a[col][c]);
                a[r][c] = field.sub(&a[r][c], &t);
            }
        }
    }
    det
}

/// Incremental search for the first linear dependency in a sequence of
/// vectors. Feed vectors with [`DependencyFinder::push`]; the first call that
/// returns `Some(c)` gives coefficients with `Σ cᵢ vᵢ = 0` and `c_last = 1`.
pub struct DependencyFinder<F: Field> {
    field: F,
    // (pivot column, reduced row with pivot 1, combination of inputs)
    basis: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
    count: usize,
}

impl<F: Field> DependencyFinder<F> {
    pub fn new(field: F) -> Self {
        DependencyFinder {
            field,
            basis: Vec::new(),
            count: 0,
        }
    }

    pub fn push(&mut self, v: Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let k = self.count;
        self.count += 1;
        let mut row = v;
        let mut comb = vec![f.zero(); k + 1];
        comb[k] = f.one();
        for (pivot, brow, bcomb) in &self.basis {
            if f.is_zero(&row[*pivot]) {
                continue;
            }
            let factor = row[*pivot].clone();
            for (x, y) in row.iter_mut().zip(brow) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
            for (x, y) in comb.iter_mut().zip(bcomb) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        match row.iter().position(|x| !f.is_zero(x)) {
            None => Some(comb),
            Some(pivot) => {
                let inv = f.inv(&row[pivot]).expect("pivot is nonzero");
                for x in row.iter_mut() {
                    *x = f.mul(x, &inv);
                }
                for x in comb.iter_mut() {
                    *x = f.mul(x, &inv);
                }
                for (_, _, bcomb) in self.basis.iter_mut() {
                    bcomb.push(f.zero());
                }
                self.basis.push((pivot, row, comb));
                None
            }
        }
    }
}
