use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CheckerError;

/// The generator for sample `i` of a seeded random search. Each sample has
/// its own stream, so results do not depend on how samples are split across
/// workers.
pub(crate) fn sample_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

pub(crate) struct Found<T> {
    pub index: u64,
    pub item: T,
}

/// Runs `probe` over `0..count` and returns the lowest index where it reports
/// a violation, plus the number of evaluations that decides the verdict
/// (`index + 1` when found, `count` otherwise). Errors surface in index order
/// like violations.
pub(crate) fn first_violation<T, P>(count: u64, workers: usize, probe: P) -> Result<(Option<Found<T>>, u64), CheckerError>
where
    T: Send,
    P: Fn(u64) -> Result<Option<T>, CheckerError> + Sync,
{
    let lift = |i: u64| match probe(i) {
        Ok(None) => None,
        Ok(Some(item)) => Some(Ok(Found { index: i, item })),
        Err(e) => Some(Err(e)),
    };
    let hit = if workers <= 1 {
        (0..count).find_map(lift)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CheckerError::Invalid(format!("cannot start worker pool: {e}")))?;
        pool.install(|| (0..count).into_par_iter().find_map_first(lift))
    };
    match hit {
        None => Ok((None, count)),
        Some(Ok(found)) => {
            let evaluations = found.index + 1;
            Ok((Some(found), evaluations))
        }
        Some(Err(e)) => Err(e),
    }
}

/// `max f(i)` over `0..count`, 0 for an empty range.
pub(crate) fn max_over<F>(count: u64, workers: usize, f: F) -> Result<u32, CheckerError>
where
    F: Fn(u64) -> Result<u32, CheckerError> + Sync,
{
    if workers <= 1 {
        return (0..count).try_fold(0, |m, i| Ok(m.max(f(i)?)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CheckerError::Invalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| (0..count).into_par_iter().map(&f).try_reduce(|| 0, |a, b| Ok(a.max(b))))
}

/// Mixed-radix digits of `index`, most significant first.
pub(crate) fn digits(mut index: u64, base: u64, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % base) as usize;
        index /= base;
    }
    out
}

/// `base^len` when it does not exceed `cap`.
pub(crate) fn tuple_count(base: u64, len: usize, cap: u64) -> Option<u64> {
    let mut total: u64 = 1;
    for _ in 0..len {
        total = total.checked_mul(base)?;
        if total > cap {
            return None;
        }
    }
    Some(total)
}
