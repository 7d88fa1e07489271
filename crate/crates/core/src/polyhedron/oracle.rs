//! Brute-force hull by subset enumeration, used to cross-check
//! [`convex_hull`](super::convex_hull).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{affine_hull, assemble, supporting_plane, FaceLattice, Facet};
use crate::exponent::ExponentVector;

pub const ORACLE_MAX_POINTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle hull accepts at most {max} points, got {got}")]
    TooLarge { got: usize, max: usize },
    #[error("oracle hull needs at least one point")]
    Empty,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every `k`-subset of points spanning a hyperplane of the affine hull with
/// all remaining points weakly on one side defines a facet; every face is
/// the intersection of the facets containing some subset of at most `k`
/// points.
pub fn oracle_hull(points: &[ExponentVector]) -> Result<FaceLattice, OracleError> {
    if points.is_empty() {
        return Err(OracleError::Empty);
    }
    if points.len() > ORACLE_MAX_POINTS {
        return Err(OracleError::TooLarge { got: points.len(), max: ORACLE_MAX_POINTS });
    }
    let hull = affine_hull(points);
    let k = hull.dim;
    if k == 0 {
        return Ok(super::trivial_lattice(points, hull));
    }

    let mut planes: BTreeMap<Vec<usize>, (Vec<i64>, i64)> = BTreeMap::new();
    for subset in combinations(points.len(), k) {
        let Some((normal, offset)) = supporting_plane(points, &hull.normal_space, &subset) else {
            continue;
        };
        let on: Vec<usize> = (0..points.len()).filter(|&i| points[i].dot(&normal) == offset).collect();
        planes.insert(on, (normal, offset));
    }
    let facets: Vec<Facet> =
        planes.into_iter().map(|(vertex_ids, (normal, offset))| Facet { normal, offset, vertex_ids }).collect();

    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for size in 1..=k {
        for subset in combinations(points.len(), size) {
            let containing: Vec<&Facet> =
                facets.iter().filter(|f| subset.iter().all(|i| f.vertex_ids.contains(i))).collect();
            if containing.is_empty() {
                continue;
            }
            let meet: Vec<usize> =
                (0..points.len()).filter(|i| containing.iter().all(|f| f.vertex_ids.contains(i))).collect();
            faces.insert(meet);
        }
    }
    Ok(assemble(points, hull, facets, faces))
}
