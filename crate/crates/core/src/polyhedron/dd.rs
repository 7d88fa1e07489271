//! Double-description enumeration of facet inequalities.
//!
//! Each point `p` contributes the homogeneous constraint `b - <a, p> >= 0`
//! on `x = (a, b)`. For a full-dimensional point set the resulting cone is
//! pointed, and its extreme rays are exactly the facet inequalities.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg;

struct Ray {
    v: Vec<BigInt>,
    zeros: BTreeSet<usize>,
}

fn constraint(p: &[i64]) -> Vec<BigInt> {
    let mut row: Vec<BigInt> = p.iter().map(|&x| BigInt::from(-x)).collect();
    row.push(BigInt::one());
    row
}

fn eval(row: &[BigInt], v: &[BigInt]) -> BigInt {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Returns, for every facet, the ascending indices of points on it.
/// `points` must be full-dimensional in their own coordinates and
/// `basis_ids` must index affinely independent points spanning them.
pub(super) fn facet_point_sets(points: &[Vec<i64>], basis_ids: &[usize]) -> Vec<Vec<usize>> {
    let k = points[0].len();
    let d = k + 1;
    debug_assert_eq!(basis_ids.len(), d);
    let rows: Vec<Vec<BigInt>> = points.iter().map(|p| constraint(p)).collect();

    let mut rays = initial_rays(&rows, basis_ids);
    let mut processed: Vec<usize> = basis_ids.to_vec();
    for r in rays.iter_mut() {
        r.zeros = processed.iter().copied().filter(|&i| eval(&rows[i], &r.v).is_zero()).collect();
    }

    for (i, row) in rows.iter().enumerate() {
        if basis_ids.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| eval(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();

        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: BTreeSet<usize> = rays[p].zeros.intersection(&rays[n].zeros).copied().collect();
                if common.len() + 2 < d {
                    continue;
                }
                let dominated = rays.iter().enumerate().any(|(j, r)| j != p && j != n && common.is_subset(&r.zeros));
                if dominated {
                    continue;
                }
                let v: Vec<BigInt> =
                    rays[n].v.iter().zip(&rays[p].v).map(|(xn, xp)| &vals[p] * xn - &vals[n] * xp).collect();
                let mut zeros = common;
                zeros.insert(i);
                fresh.push(Ray { v: linalg::primitive_int(&v), zeros });
            }
        }

        let mut kept = Vec::with_capacity(rays.len() + fresh.len());
        for (j, mut r) in rays.into_iter().enumerate() {
            if vals[j].is_negative() {
                continue;
            }
            if vals[j].is_zero() {
                r.zeros.insert(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
        processed.push(i);
    }

    let mut sets: Vec<Vec<usize>> = rays
        .iter()
        .filter(|r| r.v[..k].iter().any(|x| !x.is_zero()))
        .map(|r| (0..rows.len()).filter(|&i| eval(&rows[i], &r.v).is_zero()).collect())
        .collect();
    sets.sort();
    sets.dedup();
    sets
}

/// Extreme rays of the simplicial cone cut out by the basis rows: the
/// columns of the inverse of the basis matrix.
fn initial_rays(rows: &[Vec<BigInt>], basis_ids: &[usize]) -> Vec<Ray> {
    let d = basis_ids.len();
    let augmented: Vec<linalg::Row> = basis_ids
        .iter()
        .enumerate()
        .map(|(r, &i)| {
            let mut row: linalg::Row = rows[i].iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..d).map(|c| if c == r { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let (reduced, pivots) = linalg::rref(augmented, 2 * d);
    assert_eq!(pivots, (0..d).collect::<Vec<_>>(), "basis rows are not independent");
    (0..d)
        .map(|col| {
            let column: Vec<BigRational> = reduced.iter().map(|row| row[d + col].clone()).collect();
            Ray { v: linalg::primitive(&column), zeros: BTreeSet::new() }
        })
        .collect()
}
