use std::time::Instant;

use rand::Rng as RandRng;
use serde_json::json;

use super::search::{first_violation, max_over, sample_rng};
use super::{reverify, CheckerError, Mode, Outcome, SearchConfig, Verdict, UNIT_RETRIES};
use crate::matrix::{AlgebraHandle, Family, Matrix, MatrixError};
use crate::rings::linalg::DependencyFinder;
use crate::rings::{vandermonde_solve, Degree, Ring, RingError, UniPoly};

/// Least `k ≥ 1` with `vᵏ = 0`, `None` when `v` is not nilpotent.
pub(crate) fn nil_index<R: Ring>(v: &Matrix<R>) -> Option<u32> {
    let mut p = v.clone();
    for k in 1..=v.dim() as u32 {
        if p.is_zero() {
            return Some(k);
        }
        p = p.mul_unchecked(v);
    }
    None
}

/// The monic least-degree `μ` over the fraction field with `μ(m) = 0`, from
/// the first linear dependency among `I, m, m², …`.
pub fn minimal_polynomial<R: Ring>(m: &Matrix<R>) -> UniPoly<R::Frac> {
    let ring = m.ring();
    let frac = ring.fraction_field();
    let mut finder = DependencyFinder::new(frac.clone());
    let mut power = Matrix::identity(ring.clone(), m.dim());
    loop {
        let v = power.entries().iter().map(|x| ring.to_fraction(x)).collect();
        if let Some(c) = finder.push(v) {
            return UniPoly::new(frac, c);
        }
        power = power.mul_unchecked(m);
    }
}

/// Result of [`nil_exponent_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct NilSearch {
    pub verdict: Verdict,
    /// Least `m` with `(bacu)^m = 0` on every checked quadruple; `None` when
    /// some quadruple survives `m_max`.
    pub minimal_m: Option<u32>,
}

/// A pair `(b, c)` with `bc = 0`: `b` lives on the first `s` columns and `c`
/// on the remaining rows. In the full family both are then moved by random
/// units, `(g·b·k, k⁻¹·c·h)`.
fn sample_annihilating_pair<R: Ring, G: RandRng + ?Sized>(
    h: &AlgebraHandle<R>,
    rng: &mut G,
) -> Result<(Matrix<R>, Matrix<R>), MatrixError> {
    let n = h.dim();
    let s = rng.gen_range(0..=n);
    let zero = h.ring().zero();
    let mut b = h.sample_element(rng).rows();
    let mut c = h.sample_element(rng).rows();
    for i in 0..n {
        for j in s..n {
            b[i][j] = zero.clone();
        }
    }
    for row in c.iter_mut().take(s) {
        row.fill(zero.clone());
    }
    let b = Matrix::from_rows(h.ring().clone(), b)?;
    let c = Matrix::from_rows(h.ring().clone(), c)?;
    if h.family() != Family::Full {
        return Ok((b, c));
    }
    let g = h.sample_unit(rng, UNIT_RETRIES)?;
    let k = h.sample_unit(rng, UNIT_RETRIES)?;
    let l = h.sample_unit(rng, UNIT_RETRIES)?;
    let k_inv = k.inverse().expect("sampled unit");
    Ok((g.mul(&b)?.mul(&k)?, k_inv.mul(&c)?.mul(&l)?))
}

/// Searches for the least `m ≤ m_max` with `(bacu)^m = 0` for all `a, b, c, u`
/// with `a² = bc = 0`.
pub fn nil_exponent_search<R: Ring>(
    h: &AlgebraHandle<R>,
    m_max: u32,
    cfg: &SearchConfig,
) -> Result<NilSearch, CheckerError> {
    let started = Instant::now();
    if m_max == 0 {
        return Err(CheckerError::Invalid("m_max must be at least 1".into()));
    }
    let survives = |v: &Matrix<R>| !v.pow(u64::from(m_max)).is_zero();
    let index_of = |v: &Matrix<R>| nil_index(v).unwrap_or(u32::MAX);

    match cfg.mode {
        Mode::Exhaustive => {
            let elements: Vec<Matrix<R>> = h.enumerate_elements(cfg.cap)?.collect();
            let size = elements.len() as u64;
            if size.saturating_mul(size) > cfg.cap {
                return Err(MatrixError::CapExceeded { size: u128::from(size) * u128::from(size), cap: cfg.cap }.into());
            }
            let square_zero: Vec<&Matrix<R>> = elements.iter().filter(|a| a.mul_unchecked(a).is_zero()).collect();
            let pairs: Vec<(usize, usize)> = (0..elements.len())
                .flat_map(|b| (0..elements.len()).map(move |c| (b, c)))
                .filter(|&(b, c)| elements[b].mul_unchecked(&elements[c]).is_zero())
                .collect();
            let total = u128::from(square_zero.len() as u64) * pairs.len() as u128 * u128::from(size);
            if total > u128::from(cfg.cap) {
                return Err(MatrixError::CapExceeded { size: total, cap: cfg.cap }.into());
            }
            let total = total as u64;
            let quad = |i: u64| {
                let u = (i % size) as usize;
                let rest = i / size;
                let (b, c) = pairs[(rest % pairs.len() as u64) as usize];
                let a = (rest / pairs.len() as u64) as usize;
                (square_zero[a], &elements[b], &elements[c], &elements[u])
            };
            let product = |i: u64| {
                let (a, b, c, u) = quad(i);
                b.mul_unchecked(a).mul_unchecked(c).mul_unchecked(u)
            };
            let (found, evaluations) = first_violation(total, cfg.workers, |i| Ok(survives(&product(i)).then_some(())))?;
            let base = |v: Verdict| {
                v.detail("m_max", m_max)
                    .detail("tuples", total)
                    .detail("square_zero", square_zero.len())
                    .detail("annihilating_pairs", pairs.len())
            };
            match found {
                Some(hit) => {
                    let (a, b, c, u) = quad(hit.index);
                    let witness = quadruple_witness(a, b, c, u, m_max)?;
                    let v = Verdict::new(Outcome::Counterexample, cfg, evaluations, started)
                        .with_witness(witness)
                        .detail("witness_index", hit.index)
                        .detail("minimal_m", serde_json::Value::Null);
                    Ok(NilSearch { verdict: base(v), minimal_m: None })
                }
                None => {
                    let m = max_over(total, cfg.workers, |i| Ok(index_of(&product(i))))?.max(1);
                    let v = Verdict::new(Outcome::Holds, cfg, evaluations, started).detail("minimal_m", m);
                    Ok(NilSearch { verdict: base(v), minimal_m: Some(m) })
                }
            }
        }
        Mode::Random => {
            let quad = |i: u64| -> Result<_, CheckerError> {
                let mut rng = sample_rng(cfg.seed, i);
                let a = h.sample_square_zero(&mut rng);
                let (b, c) = sample_annihilating_pair(h, &mut rng)?;
                let u = h.sample_element(&mut rng);
                Ok((a, b, c, u))
            };
            let product = |i: u64| -> Result<Matrix<R>, CheckerError> {
                let (a, b, c, u) = quad(i)?;
                Ok(b.mul_unchecked(&a).mul_unchecked(&c).mul_unchecked(&u))
            };
            let (found, evaluations) = first_violation(cfg.budget, cfg.workers, |i| Ok(survives(&product(i)?).then_some(())))?;
            match found {
                Some(hit) => {
                    let (a, b, c, u) = quad(hit.index)?;
                    let witness = quadruple_witness(&a, &b, &c, &u, m_max)?;
                    let v = Verdict::new(Outcome::Counterexample, cfg, evaluations, started)
                        .with_witness(witness)
                        .detail("witness_index", hit.index)
                        .detail("m_max", m_max)
                        .detail("minimal_m", serde_json::Value::Null);
                    Ok(NilSearch { verdict: v, minimal_m: None })
                }
                None => {
                    let m = max_over(cfg.budget, cfg.workers, |i| Ok(index_of(&product(i)?)))?.max(1);
                    let v = Verdict::new(Outcome::Holds, cfg, evaluations, started)
                        .detail("m_max", m_max)
                        .detail("minimal_m", m);
                    Ok(NilSearch { verdict: v, minimal_m: Some(m) })
                }
            }
        }
    }
}

fn quadruple_witness<R: Ring>(
    a: &Matrix<R>,
    b: &Matrix<R>,
    c: &Matrix<R>,
    u: &Matrix<R>,
    m: u32,
) -> Result<serde_json::Value, CheckerError> {
    let ring = a.ring();
    let square = reverify::multiply(a, a);
    let bc = reverify::multiply(b, c);
    let power = reverify::chain_power(&[b, a, c, u], u64::from(m));
    if !reverify::is_zero(ring, &square) || !reverify::is_zero(ring, &bc) || reverify::is_zero(ring, &power) {
        return Err(CheckerError::VerificationFailed("nil-exponent witness".into()));
    }
    let v = b.mul_unchecked(a).mul_unchecked(c).mul_unchecked(u);
    Ok(json!({
        "a": a.to_json(),
        "b": b.to_json(),
        "c": c.to_json(),
        "u": u.to_json(),
        "bacu": v.to_json(),
        "power": v.pow(u64::from(m)).to_json(),
    }))
}

/// Over pairs with `a² = b² = 0` and `ab` nilpotent, checks `(ab)^{2d} = 0`.
/// Pairs with `ab` not nilpotent are skipped and counted.
pub fn square_zero_nilpotency<R: Ring>(h: &AlgebraHandle<R>, d: u32, cfg: &SearchConfig) -> Result<Verdict, CheckerError> {
    let started = Instant::now();
    if d == 0 {
        return Err(CheckerError::Invalid("d must be at least 1".into()));
    }
    let exp = 2 * u64::from(d);
    let violates = |a: &Matrix<R>, b: &Matrix<R>| {
        let p = a.mul_unchecked(b);
        nil_index(&p).is_some() && !p.pow(exp).is_zero()
    };
    let skipped = |a: &Matrix<R>, b: &Matrix<R>| nil_index(&a.mul_unchecked(b)).is_none();

    let (pair_at, count): (Box<dyn Fn(u64) -> (Matrix<R>, Matrix<R>) + Sync + '_>, u64) = match cfg.mode {
        Mode::Exhaustive => {
            let sz: Vec<Matrix<R>> = h.enumerate_square_zero(cfg.cap)?.collect();
            let k = sz.len() as u64;
            if k.saturating_mul(k) > cfg.cap {
                return Err(MatrixError::CapExceeded { size: u128::from(k) * u128::from(k), cap: cfg.cap }.into());
            }
            (Box::new(move |i| (sz[(i / k) as usize].clone(), sz[(i % k) as usize].clone())), k * k)
        }
        Mode::Random => (
            Box::new(|i| {
                let mut rng = sample_rng(cfg.seed, i);
                let a = h.sample_square_zero(&mut rng);
                let b = h.sample_square_zero(&mut rng);
                (a, b)
            }),
            cfg.budget,
        ),
    };
    let (found, evaluations) = first_violation(count, cfg.workers, |i| {
        let (a, b) = pair_at(i);
        Ok(violates(&a, &b).then_some((a, b)))
    })?;
    let skipped_count = (0..evaluations).filter(|&i| {
        let (a, b) = pair_at(i);
        skipped(&a, &b)
    });
    let skipped_count = skipped_count.count() as u64;
    let verdict = match found {
        None => Verdict::new(Outcome::Holds, cfg, evaluations, started),
        Some(hit) => {
            let (a, b) = hit.item;
            let p = reverify::chain_power(&[&a, &b], exp);
            if reverify::is_zero(h.ring(), &p) {
                return Err(CheckerError::VerificationFailed("square-zero witness".into()));
            }
            Verdict::new(Outcome::Counterexample, cfg, evaluations, started)
                .with_witness(json!({"a": a.to_json(), "b": b.to_json()}))
                .detail("witness_index", hit.index)
        }
    };
    Ok(verdict
        .detail("d", d)
        .detail("exponent", exp)
        .detail("pairs", count)
        .detail("skipped_not_nilpotent", skipped_count)
        .detail("checked", evaluations - skipped_count))
}

/// Homogeneous components of `w(λ) = f(v·(λu)) = Σ λⁱ pᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeReport<R: Ring> {
    pub d: usize,
    pub lambdas: Vec<R::Elem>,
    /// `w(λ)` for each `λ`.
    pub values: Vec<Matrix<R>>,
    /// `p₀, p₁, …, p_d`.
    pub components: Vec<Matrix<R>>,
    /// `p₁ = … = p_d = 0`.
    pub all_vanish: bool,
    /// Whether `(v·u)^d = 0`, reported only when every component vanishes.
    pub nilpotent: Option<bool>,
}

impl<R: Ring> VandermondeReport<R> {
    /// `Σ λⁱ pᵢ`.
    pub fn forward(&self, lambda: &R::Elem) -> Matrix<R> {
        let ring = self.components[0].ring();
        let mut acc = Matrix::zero(ring.clone(), self.components[0].dim());
        for (i, p) in self.components.iter().enumerate() {
            acc = acc.add_unchecked(&p.scale(&ring.pow(lambda, i as u64)));
        }
        acc
    }
}

/// Splits `w(λ) = f(v·(λu))` into homogeneous components by a Vandermonde
/// solve. With `d + 1` scalars all of `p₀..p_d` are solved for; with `d`
/// nonzero scalars `p₀ = f(0)·I` is taken as known and `0` joins the points.
/// The zero polynomial uses `d = |lambdas| − 1`.
pub fn vandermonde_nil<R: Ring>(
    f: &UniPoly<R>,
    v: &Matrix<R>,
    u: &Matrix<R>,
    lambdas: &[R::Elem],
) -> Result<VandermondeReport<R>, CheckerError> {
    let ring = v.ring().clone();
    if *f.ring() != ring {
        return Err(RingError::Mismatch { left: f.ring().spec(), right: ring.spec() }.into());
    }
    let n = v.dim();
    let d = match f.degree() {
        Degree::Finite(d) => d,
        Degree::MinusInfinity => lambdas.len().saturating_sub(1),
    };
    let vu = v.mul(u)?;
    let values = lambdas
        .iter()
        .map(|l| f.evaluate(&vu.scale(l)))
        .collect::<Result<Vec<_>, _>>()?;
    let (points, rhs) = if lambdas.len() == d + 1 {
        (lambdas.to_vec(), values.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>())
    } else if lambdas.len() == d && d > 0 {
        if lambdas.iter().any(|l| ring.is_zero(l)) {
            return Err(CheckerError::Invalid("with d scalars, 0 may not be one of them".into()));
        }
        let p0 = Matrix::scalar(ring.clone(), n, f.coeff(0));
        let mut points = vec![ring.zero()];
        points.extend_from_slice(lambdas);
        let mut rhs = vec![vec![ring.zero(); n * n]];
        rhs.extend(values.iter().map(|m| m.sub(&p0).map(|x| x.entries().to_vec())).collect::<Result<Vec<_>, _>>()?);
        (points, rhs)
    } else {
        return Err(CheckerError::Invalid(format!(
            "degree {d} needs {} or {} scalars, got {}",
            d,
            d + 1,
            lambdas.len()
        )));
    };
    let solved = vandermonde_solve(&ring, &points, &rhs)?;
    let mut components = solved
        .into_iter()
        .map(|c| Matrix::new(ring.clone(), n, c))
        .collect::<Result<Vec<_>, _>>()?;
    if lambdas.len() == d {
        components[0] = Matrix::scalar(ring.clone(), n, f.coeff(0));
    }
    let all_vanish = components[1..].iter().all(Matrix::is_zero);
    let nilpotent = all_vanish.then(|| vu.pow(d as u64).is_zero());
    Ok(VandermondeReport {
        d,
        lambdas: lambdas.to_vec(),
        values,
        components,
        all_vanish,
        nilpotent,
    })
}
