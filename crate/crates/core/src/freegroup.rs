//! Reduced words in the free group `F_l = <x1, …, xl>`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("generator indices start at 1")]
    ZeroGenerator,
    #[error("exponent overflow")]
    ExponentOverflow,
}

/// One maximal block `x_generator^exponent` of a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: u32,
    pub exponent: i64,
}

/// A fully reduced word: adjacent syllables have distinct generators and no
/// exponent is zero. The empty word is the identity.
///
/// Words are ordered by letter length (sum of absolute exponents) and then
/// lexicographically on the syllable sequence, which fixes term order in
/// every container keyed by words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    syllables: Vec<Syllable>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// `x_generator`
    pub fn generator(generator: u32) -> Self {
        Self::power_of(generator, 1)
    }

    /// `x_generator^exponent`; exponent 0 gives the identity.
    pub fn power_of(generator: u32, exponent: i64) -> Self {
        assert!(generator >= 1, "generator indices start at 1");
        if exponent == 0 {
            return Self::identity();
        }
        FreeWord {
            syllables: vec![Syllable {
                generator,
                exponent,
            }],
        }
    }

    /// Builds a word from any syllable sequence, reducing eagerly.
    pub fn from_syllables<I>(syllables: I) -> Result<Self, FreeGroupError>
    where
        I: IntoIterator<Item = (u32, i64)>,
    {
        let mut out: Vec<Syllable> = Vec::new();
        for (generator, exponent) in syllables {
            if generator == 0 {
                return Err(FreeGroupError::ZeroGenerator);
            }
            push_reduced(&mut out, Syllable {
                generator,
                exponent,
            })?;
        }
        Ok(FreeWord { syllables: out })
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters `x_i^{±1}` in the word.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.syllables.iter().map(|s| s.generator).max().unwrap_or(0)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.syllables.iter().any(|s| s.exponent < 0)
    }

    pub fn try_multiply(&self, other: &FreeWord) -> Result<FreeWord, FreeGroupError> {
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push_reduced(&mut out, *s)?;
        }
        Ok(FreeWord { syllables: out })
    }

    /// Group product; panics only if an exponent leaves the `i64` range.
    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        self.try_multiply(other).expect("exponent overflow")
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    /// Replaces every syllable `(var, e)` by `replacement^e`; this is the
    /// endomorphism of `F_l` fixing every other generator.
    pub fn substitute(&self, var: u32, replacement: &FreeWord) -> FreeWord {
        let mut out = FreeWord::identity();
        for s in &self.syllables {
            let piece = if s.generator == var {
                replacement.pow(s.exponent)
            } else {
                FreeWord::power_of(s.generator, s.exponent)
            };
            out = out.multiply(&piece);
        }
        out
    }

    /// Sum of the exponents of `x_var`.
    pub fn exp_sum(&self, var: u32) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.generator == var)
            .map(|s| s.exponent)
            .sum()
    }

    /// Sum of all exponents.
    pub fn exp_sum_total(&self) -> i64 {
        self.syllables.iter().map(|s| s.exponent).sum()
    }
}

fn push_reduced(out: &mut Vec<Syllable>, s: Syllable) -> Result<(), FreeGroupError> {
    if s.exponent == 0 {
        return Ok(());
    }
    match out.last_mut() {
        Some(last) if last.generator == s.generator => {
            last.exponent = last
                .exponent
                .checked_add(s.exponent)
                .ok_or(FreeGroupError::ExponentOverflow)?;
            if last.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(s),
    }
    Ok(())
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letter_length()
            .cmp(&other.letter_length())
            .then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{}", s.generator)?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}
