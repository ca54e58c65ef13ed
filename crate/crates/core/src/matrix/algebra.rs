use std::fmt;

use rand::Rng as RandRng;

use super::{Matrix, MatrixError};
use crate::rings::Ring;

/// Default bound on exhaustive enumeration sizes.
pub const DEFAULT_CAP: u64 = 1 << 24;
/// Largest supported dimension.
pub const MAX_DIMENSION: usize = 6;
/// Entries of random matrices over `ZZ` are drawn from `[-B, B]`.
pub const SAMPLE_ENTRY_BOUND: i64 = 9;

/// Which matrices belong to the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `M_n`: all matrices.
    Full,
    /// `T_n`: zero strictly below the diagonal.
    UpperTriangular,
    /// `D_n`: zero off the diagonal.
    Diagonal,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::Full => 'M',
            Family::UpperTriangular => 'T',
            Family::Diagonal => 'D',
        }
    }

    fn allows(self, i: usize, j: usize) -> bool {
        match self {
            Family::Full => true,
            Family::UpperTriangular => i <= j,
            Family::Diagonal => i == j,
        }
    }
}

/// A concrete test-bed algebra: a family of `n × n` matrices over a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraHandle<R: Ring> {
    family: Family,
    n: usize,
    ring: R,
}

impl<R: Ring> fmt::Display for AlgebraHandle<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}@{}", self.family.letter(), self.n, self.ring.spec())
    }
}

impl<R: Ring> AlgebraHandle<R> {
    pub fn new(family: Family, n: usize, ring: R) -> Result<Self, MatrixError> {
        if !(1..=MAX_DIMENSION).contains(&n) {
            return Err(MatrixError::DimensionOutOfRange(n));
        }
        Ok(AlgebraHandle { family, n, ring })
    }

    pub fn full(n: usize, ring: R) -> Result<Self, MatrixError> {
        Self::new(Family::Full, n, ring)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn identity(&self) -> Matrix<R> {
        Matrix::identity(self.ring.clone(), self.n)
    }

    pub fn zero(&self) -> Matrix<R> {
        Matrix::zero(self.ring.clone(), self.n)
    }

    /// Free entry positions in row-major order.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.family.allows(i, j))
            .collect()
    }

    pub fn contains(&self, m: &Matrix<R>) -> bool {
        m.ring() == &self.ring
            && m.dim() == self.n
            && (0..self.n).all(|i| {
                (0..self.n).all(|j| self.family.allows(i, j) || self.ring.is_zero(m.get(i, j)))
            })
    }

    /// `|R|^(free positions)`, `None` for infinite rings.
    pub fn element_count(&self) -> Option<u128> {
        let q = u128::from(self.ring.order()?);
        let k = self.positions().len() as u32;
        Some(q.checked_pow(k).unwrap_or(u128::MAX))
    }

    /// Checks that exhaustive enumeration fits under `cap` and returns the size.
    pub fn enumeration_size(&self, cap: u64) -> Result<u64, MatrixError> {
        let size = self
            .element_count()
            .ok_or(MatrixError::NotEnumerable(self.ring.spec()))?;
        if size > u128::from(cap) {
            return Err(MatrixError::CapExceeded { size, cap });
        }
        Ok(size as u64)
    }

    /// The `index`-th element in row-major lexicographic order: the first free
    /// position is the most significant digit, digits are residues.
    pub fn element_at(&self, mut index: u64) -> Matrix<R> {
        let elems = self.ring.elements().expect("element_at needs a finite ring");
        let q = elems.len() as u64;
        let positions = self.positions();
        let mut m = self.zero();
        for &(i, j) in positions.iter().rev() {
            m.entries[i * self.n + j] = elems[(index % q) as usize].clone();
            index /= q;
        }
        m
    }

    pub fn enumerate_elements(&self, cap: u64) -> Result<impl Iterator<Item = Matrix<R>> + '_, MatrixError> {
        let size = self.enumeration_size(cap)?;
        Ok((0..size).map(move |i| self.element_at(i)))
    }

    /// Units of the algebra (inverse inside the same family), in enumeration order.
    pub fn enumerate_units(&self, cap: u64) -> Result<impl Iterator<Item = Matrix<R>> + '_, MatrixError> {
        Ok(self
            .enumerate_elements(cap)?
            .filter(move |m| self.inverse_in(m).is_some()))
    }

    /// Exactly the elements with `m² = 0`, in enumeration order.
    pub fn enumerate_square_zero(&self, cap: u64) -> Result<impl Iterator<Item = Matrix<R>> + '_, MatrixError> {
        Ok(self
            .enumerate_elements(cap)?
            .filter(|m| m.mul_unchecked(m).is_zero()))
    }

    pub fn enumerate_idempotents(&self, cap: u64) -> Result<impl Iterator<Item = Matrix<R>> + '_, MatrixError> {
        Ok(self
            .enumerate_elements(cap)?
            .filter(|m| m.mul_unchecked(m) == *m))
    }

    /// Inverse of `m` when it exists and lies in this algebra.
    pub fn inverse_in(&self, m: &Matrix<R>) -> Option<Matrix<R>> {
        m.inverse().filter(|inv| self.contains(inv))
    }

    fn random_entry<G: RandRng + ?Sized>(&self, rng: &mut G) -> R::Elem {
        match self.ring.order() {
            Some(q) => self.ring.from_i64(rng.gen_range(0..q as i64)),
            None => self
                .ring
                .from_i64(rng.gen_range(-SAMPLE_ENTRY_BOUND..=SAMPLE_ENTRY_BOUND)),
        }
    }

    /// Uniform over the free entries (entries in `[-B, B]` over `ZZ`).
    pub fn sample_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> Matrix<R> {
        let mut m = self.zero();
        for (i, j) in self.positions() {
            m.entries[i * self.n + j] = self.random_entry(rng);
        }
        m
    }

    /// Rejection sampling for units, up to `retries` draws. Over infinite rings
    /// candidates are drawn as `L·U` products (unit lower-triangular times
    /// upper-triangular with `±1` diagonal), since random integer matrices are
    /// almost never unimodular.
    pub fn sample_unit<G: RandRng + ?Sized>(&self, rng: &mut G, retries: u32) -> Result<Matrix<R>, MatrixError> {
        for _ in 0..retries {
            let candidate = if self.ring.order().is_some() {
                self.sample_element(rng)
            } else {
                self.unimodular_candidate(rng)
            };
            if self.inverse_in(&candidate).is_some() {
                return Ok(candidate);
            }
        }
        Err(MatrixError::RetryBudgetExhausted(retries))
    }

    fn unimodular_candidate<G: RandRng + ?Sized>(&self, rng: &mut G) -> Matrix<R> {
        let n = self.n;
        let mut upper = self.zero();
        for i in 0..n {
            for j in i..n {
                upper.entries[i * n + j] = if i == j {
                    self.ring.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 })
                } else if self.family == Family::Diagonal {
                    self.ring.zero()
                } else {
                    self.random_entry(rng)
                };
            }
        }
        if self.family != Family::Full {
            return upper;
        }
        let mut lower = self.identity();
        for i in 0..n {
            for j in 0..i {
                lower.entries[i * n + j] = self.random_entry(rng);
            }
        }
        lower.mul_unchecked(&upper)
    }

    /// A random matrix with `m² = 0`, of the form `v·wᵀ` with `wᵀv = 0`.
    ///
    /// For the full family `w` is projected as `w' = (v·v)w − (w·v)v`, which
    /// satisfies `w'·v = 0` over any commutative ring. For the triangular
    /// family `v` and `w` have disjoint supports split at a random index, so
    /// `v·wᵀ` is strictly upper triangular. The diagonal family only has `0`.
    pub fn sample_square_zero<G: RandRng + ?Sized>(&self, rng: &mut G) -> Matrix<R> {
        let n = self.n;
        let r = &self.ring;
        let (v, w): (Vec<R::Elem>, Vec<R::Elem>) = match self.family {
            Family::Diagonal => return self.zero(),
            Family::UpperTriangular => {
                if n == 1 {
                    return self.zero();
                }
                let split = rng.gen_range(1..n);
                let v = (0..n)
                    .map(|i| if i < split { self.random_entry(rng) } else { r.zero() })
                    .collect();
                let w = (0..n)
                    .map(|i| if i >= split { self.random_entry(rng) } else { r.zero() })
                    .collect();
                (v, w)
            }
            Family::Full => {
                let v: Vec<R::Elem> = (0..n).map(|_| self.random_entry(rng)).collect();
                let w: Vec<R::Elem> = (0..n).map(|_| self.random_entry(rng)).collect();
                let dot = |a: &[R::Elem], b: &[R::Elem]| {
                    a.iter().zip(b).fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)))
                };
                let vv = dot(&v, &v);
                let wv = dot(&w, &v);
                let w = w
                    .iter()
                    .zip(&v)
                    .map(|(wi, vi)| r.sub(&r.mul(&vv, wi), &r.mul(&wv, vi)))
                    .collect();
                (v, w)
            }
        };
        let mut m = self.zero();
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = r.mul(&v[i], &w[j]);
            }
        }
        m
    }
}
