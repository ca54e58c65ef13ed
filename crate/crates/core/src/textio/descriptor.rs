//! Algebra descriptors such as `M2@Fp:2` and matrix literals `[[0,1],[1,1]]`.

use std::fmt;
use std::str::FromStr;

use crate::matrix::{AlgebraHandle, Family, Matrix, MatrixError, MAX_DIMENSION};
use crate::rings::{Ring, RingSpec};

/// `<family><n>@<ring>` with family `M`, `T` or `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub family: Family,
    pub n: usize,
    pub ring: RingSpec,
}

impl AlgebraSpec {
    pub fn handle<R: Ring>(&self, ring: R) -> Result<AlgebraHandle<R>, MatrixError> {
        AlgebraHandle::new(self.family, self.n, ring)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}@{}", self.family.letter(), self.n, self.ring)
    }
}

impl FromStr for AlgebraSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid algebra {s:?} (expected e.g. M2@Fp:2, T3@ZZ, D2@Fp:5)");
        let (head, ring) = s.split_once('@').ok_or_else(bad)?;
        let mut chars = head.chars();
        let family = match chars.next() {
            Some('M') => Family::Full,
            Some('T') => Family::UpperTriangular,
            Some('D') => Family::Diagonal,
            _ => return Err(bad()),
        };
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        if !(1..=MAX_DIMENSION).contains(&n) {
            return Err(format!("dimension {n} is outside 1..={MAX_DIMENSION}"));
        }
        let ring: RingSpec = ring.parse().map_err(|e| format!("{e}"))?;
        Ok(AlgebraSpec { family, n, ring })
    }
}

/// Parses a square integer matrix literal and maps it into `ring`.
pub fn parse_matrix<R: Ring>(ring: &R, text: &str) -> Result<Matrix<R>, String> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| format!("invalid matrix {text:?}: {e}"))?;
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64_rows(ring.clone(), &refs).map_err(|e| e.to_string())
}
