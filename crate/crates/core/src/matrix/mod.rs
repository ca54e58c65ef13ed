//! Square matrices over exact rings and the matrix algebras `M_n`, `T_n`, `D_n`.

mod algebra;
mod eval;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rings::{check_same, linalg, Ring, RingError, RingSpec, UnitalAlgebra};

pub use algebra::{AlgebraHandle, Family, DEFAULT_CAP, MAX_DIMENSION, SAMPLE_ENTRY_BOUND};
pub use eval::evaluate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not square or is empty")]
    NotSquare,
    #[error("dimension {0} is outside 1..={max}", max = MAX_DIMENSION)]
    DimensionOutOfRange(usize),
    #[error("x{var} has a negative exponent but its value is not a unit")]
    NotAUnit { var: u32 },
    #[error("x{var} is not assigned ({provided} values given)")]
    MissingVariable { var: u32, provided: usize },
    #[error("{size} elements exceed the enumeration cap {cap}; use random mode")]
    CapExceeded { size: u128, cap: u64 },
    #[error("{0} is infinite and cannot be enumerated")]
    NotEnumerable(RingSpec),
    #[error("no unit found after {0} sampling attempts")]
    RetryBudgetExhausted(u32),
}

/// An `n × n` matrix, entries stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R: Ring> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, n: usize, entries: Vec<R::Elem>) -> Result<Self, MatrixError> {
        if n == 0 || entries.len() != n * n {
            return Err(MatrixError::NotSquare);
        }
        Ok(Matrix { ring, n, entries })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        Self::new(ring, n, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(ring: R, rows: &[&[i64]]) -> Result<Self, MatrixError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Self::from_rows(ring, rows)
    }

    pub fn from_integer_rows(ring: R, rows: &[Vec<BigInt>]) -> Result<Self, MatrixError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|v| ring.from_integer(v)).collect())
            .collect();
        Self::from_rows(ring, rows)
    }

    pub fn zero(ring: R, n: usize) -> Self {
        let entries = vec![ring.zero(); n * n];
        Matrix { ring, n, entries }
    }

    pub fn scalar(ring: R, n: usize, c: R::Elem) -> Self {
        let mut m = Self::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let one = ring.one();
        Self::scalar(ring, n, one)
    }

    /// Matrix unit `e_{ij}`, 1-based indices.
    pub fn unit(ring: R, n: usize, i: usize, j: usize) -> Self {
        assert!((1..=n).contains(&i) && (1..=n).contains(&j), "index out of range");
        let mut m = Self::zero(ring, n);
        m.entries[(i - 1) * n + (j - 1)] = m.ring.one();
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<R::Elem>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ring.clone(), self.n)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), MatrixError> {
        check_same(&self.ring, &other.ring)?;
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(self.with_entries(entries))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        self.with_entries(entries)
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let r = &self.ring;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = r.zero();
                for k in 0..n {
                    let a = &self.entries[i * n + k];
                    if r.is_zero(a) {
                        continue;
                    }
                    acc = r.add(&acc, &r.mul(a, &other.entries[k * n + j]));
                }
                entries.push(acc);
            }
        }
        self.with_entries(entries)
    }

    fn with_entries(&self, entries: Vec<R::Elem>) -> Self {
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn neg(&self) -> Self {
        self.with_entries(self.entries.iter().map(|a| self.ring.neg(a)).collect())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.with_entries(self.entries.iter().map(|a| self.ring.mul(a, c)).collect())
    }

    /// `self^k`, with `self^0 = I`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.ring.clone(), self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> R::Elem {
        (0..self.n).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    fn fraction_rows(&self) -> Vec<Vec<<R::Frac as Ring>::Elem>> {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().map(|x| self.ring.to_fraction(x)).collect())
            .collect()
    }

    pub fn determinant(&self) -> R::Elem {
        let field = self.ring.fraction_field();
        let det = linalg::determinant(&field, self.fraction_rows());
        self.ring
            .from_fraction(&det)
            .expect("determinant of a ring matrix lies in the ring")
    }

    /// The two-sided inverse in `M_n(R)`, or `None` when the matrix is not a
    /// unit. Over a field this is Gauss-Jordan elimination; otherwise the
    /// matrix is a unit exactly when its determinant is, and the inverse is
    /// `det⁻¹ · adj`.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        if self.ring.is_field() {
            let field = self.ring.fraction_field();
            let inv = linalg::inverse(&field, self.fraction_rows())?;
            let entries = inv
                .iter()
                .flatten()
                .map(|x| self.ring.from_fraction(x).expect("field elements map back"))
                .collect();
            return Some(self.with_entries(entries));
        }
        let det_inv = self.ring.try_inverse(&self.determinant())?;
        let mut entries = vec![self.ring.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let cofactor = self.minor(i, j).map_or_else(|| self.ring.one(), |m| m.determinant());
                let signed = if (i + j) % 2 == 0 {
                    cofactor
                } else {
                    self.ring.neg(&cofactor)
                };
                // adj = transpose of the cofactor matrix
                entries[j * n + i] = self.ring.mul(&signed, &det_inv);
            }
        }
        Some(self.with_entries(entries))
    }

    /// Matrix with row `i` and column `j` removed; `None` for `1 × 1`.
    fn minor(&self, i: usize, j: usize) -> Option<Self> {
        let n = self.n;
        if n == 1 {
            return None;
        }
        let entries = (0..n)
            .filter(|&r| r != i)
            .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| self.entries[r * n + c].clone())
            .collect();
        Some(Matrix {
            ring: self.ring.clone(),
            n: n - 1,
            entries,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .chunks(self.n)
                .map(|row| serde_json::Value::Array(row.iter().map(|x| self.ring.to_json(x)).collect()))
                .collect(),
        )
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                f.write_str(&self.ring.format(x))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<R: Ring> UnitalAlgebra for Matrix<R> {
    type Scalars = R;

    fn scalars(&self) -> &R {
        &self.ring
    }

    fn unit_like(&self) -> Self {
        Self::identity(self.ring.clone(), self.n)
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.ring.clone(), self.n)
    }

    fn alg_add(&self, other: &Self) -> Self {
        self.add_unchecked(other)
    }

    fn alg_mul(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }

    fn alg_scale(&self, c: &R::Elem) -> Self {
        self.scale(c)
    }
}
