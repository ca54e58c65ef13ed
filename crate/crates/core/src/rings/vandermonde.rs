use std::collections::HashSet;

use super::{linalg, Ring, RingError};

/// Recovers components `p₀..p_d` from `values[j] = Σᵢ points[j]ⁱ · pᵢ`.
///
/// Each value is a coordinate vector (a flattened algebra element). The
/// system is solved in the fraction field of `ring`; over `ZZ` every solved
/// coordinate must come back integral or the call fails with
/// [`RingError::NotRepresentable`].
pub fn vandermonde_solve<R: Ring>(
    ring: &R,
    points: &[R::Elem],
    values: &[Vec<R::Elem>],
) -> Result<Vec<Vec<R::Elem>>, RingError> {
    if points.is_empty() {
        return Err(RingError::Malformed("no interpolation points".into()));
    }
    if points.len() != values.len() {
        return Err(RingError::Malformed(format!(
            "{} points but {} values",
            points.len(),
            values.len()
        )));
    }
    let width = values[0].len();
    if values.iter().any(|v| v.len() != width) {
        return Err(RingError::Malformed("values have different shapes".into()));
    }
    if let Some(order) = ring.order() {
        if points.len() as u64 > order {
            return Err(RingError::FieldTooSmall {
                needed: points.len(),
                order,
            });
        }
    }
    let mut seen = HashSet::new();
    if !points.iter().all(|p| seen.insert(p)) {
        return Err(RingError::RepeatedPoint);
    }

    let field = ring.fraction_field();
    let m = points.len();
    let system = points
        .iter()
        .map(|p| {
            let p = ring.to_fraction(p);
            let mut row = Vec::with_capacity(m);
            let mut acc = field.one();
            for _ in 0..m {
                row.push(acc.clone());
                acc = field.mul(&acc, &p);
            }
            row
        })
        .collect();
    let rhs = values
        .iter()
        .map(|v| v.iter().map(|x| ring.to_fraction(x)).collect())
        .collect();
    let solved = linalg::solve(&field, system, rhs)
        .ok_or_else(|| RingError::Malformed("singular Vandermonde system".into()))?;
    solved
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|x| ring.from_fraction(x).ok_or(RingError::NotRepresentable(ring.spec())))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Integers, PrimeField};
    use num_bigint::BigInt;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Forward map: values[j] = Σ points[j]^i comps[i].
    fn forward<R: Ring>(ring: &R, points: &[R::Elem], comps: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
        points
            .iter()
            .map(|p| {
                let mut out = vec![ring.zero(); comps[0].len()];
                for (i, c) in comps.iter().enumerate() {
                    let w = ring.pow(p, i as u64);
                    for (o, x) in out.iter_mut().zip(c) {
                        *o = ring.add(o, &ring.mul(&w, x));
                    }
                }
                out
            })
            .collect()
    }

    #[test]
    fn two_point_example_over_f5() {
        let f = PrimeField::new(5).unwrap();
        // values e12 and 2*e12, flattened row-major
        let values = vec![vec![0, 1, 0, 0], vec![0, 2, 0, 0]];
        let comps = vandermonde_solve(&f, &[1, 2], &values).unwrap();
        assert_eq!(comps, vec![vec![0, 0, 0, 0], vec![0, 1, 0, 0]]);
    }

    #[test]
    fn zero_values_give_zero_components() {
        let f = PrimeField::new(11).unwrap();
        let comps = vandermonde_solve(&f, &[1, 2, 3], &vec![vec![0; 3]; 3]).unwrap();
        assert!(comps.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn repeated_point_rejected() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(
            vandermonde_solve(&f, &[1, 1], &[vec![0], vec![0]]),
            Err(RingError::RepeatedPoint)
        );
        let z = Integers;
        let p = [BigInt::from(3), BigInt::from(3)];
        assert_eq!(
            vandermonde_solve(&z, &p, &[vec![z.zero()], vec![z.zero()]]),
            Err(RingError::RepeatedPoint)
        );
    }

    #[test]
    fn field_too_small() {
        let f = PrimeField::new(2).unwrap();
        assert!(matches!(
            vandermonde_solve(&f, &[0, 1, 0], &[vec![0], vec![0], vec![0]]),
            Err(RingError::FieldTooSmall { needed: 3, order: 2 })
        ));
    }

    #[test]
    fn non_integral_solution_over_zz_rejected() {
        let z = Integers;
        // p0 + p1*x with values 0 at x=0 and 1 at x=2 would need p1 = 1/2
        let pts = [BigInt::from(0), BigInt::from(2)];
        let vals = vec![vec![BigInt::from(0)], vec![BigInt::from(1)]];
        assert_eq!(
            vandermonde_solve(&z, &pts, &vals),
            Err(RingError::NotRepresentable(crate::rings::RingSpec::Integers))
        );
    }

    #[test]
    fn round_trip_seeded_f101_and_zz() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let f = PrimeField::new(101).unwrap();
        let z = Integers;
        for _ in 0..200 {
            let d = rng.gen_range(0..7usize);
            let width = rng.gen_range(1..10usize);
            let mut pts: Vec<u32> = (0..101).collect();
            for i in 0..=d {
                let j = rng.gen_range(i..101);
                pts.swap(i, j);
            }
            pts.truncate(d + 1);
            let comps: Vec<Vec<u32>> = (0..=d)
                .map(|_| (0..width).map(|_| rng.gen_range(0..101)).collect())
                .collect();
            let vals = forward(&f, &pts, &comps);
            assert_eq!(vandermonde_solve(&f, &pts, &vals).unwrap(), comps);

            let zpts: Vec<BigInt> = (0..=d as i64).map(|i| BigInt::from(i * 3 - 5)).collect();
            let zcomps: Vec<Vec<BigInt>> = (0..=d)
                .map(|_| (0..width).map(|_| BigInt::from(rng.gen_range(-50i64..50))).collect())
                .collect();
            let zvals = forward(&z, &zpts, &zcomps);
            assert_eq!(vandermonde_solve(&z, &zpts, &zvals).unwrap(), zcomps);
        }
    }
}
