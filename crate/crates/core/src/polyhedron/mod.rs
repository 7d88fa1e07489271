//! Exact convex hulls of small integer point sets (dimension at most 4).
//!
//! Facets are computed by the double-description method on the homogenized
//! cone `{(a, b) : <a, p> <= b for every point p}`; its extreme rays are the
//! facet inequalities. Degenerate inputs are hulled inside their affine hull
//! and facet normals are reported orthogonal to the normal space.

mod dd;
mod oracle;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exponent::ExponentVector;
use crate::linalg::{self, Row};

pub use oracle::{oracle_hull, OracleError, ORACLE_MAX_POINTS};

/// Supporting hyperplane `<normal, q> = offset` of a facet, with every input
/// point satisfying `<normal, q> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices of every input point on the hyperplane, ascending.
    pub vertex_ids: Vec<usize>,
}

impl Facet {
    pub fn contains_point(&self, q: &ExponentVector) -> bool {
        q.dot(&self.normal) == self.offset
    }
}

/// A proper nonempty face; `vertex_ids` lists every input point on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub dim: usize,
    pub vertex_ids: Vec<usize>,
    pub incident_facets: Vec<usize>,
}

/// Addresses a face by dimension and position within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId {
    pub dim: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub dim: usize,
    /// Indices of affinely independent points spanning the hull.
    pub basis_ids: Vec<usize>,
    /// Primitive integer vectors orthogonal to every difference of points.
    pub normal_space: Vec<Vec<i64>>,
    /// Coordinates onto which projection is injective on the hull.
    pub(crate) pivot_columns: Vec<usize>,
}

/// Full combinatorial description of a convex hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    pub ambient_dim: usize,
    pub points: Vec<ExponentVector>,
    pub vertices: Vec<usize>,
    /// `faces[d]` holds the `d`-dimensional faces, for `d < affine_dim`.
    /// Facets appear as `faces[affine_dim - 1]` in the same order as
    /// `facets`.
    pub faces: Vec<Vec<Face>>,
    pub facets: Vec<Facet>,
    pub affine_dim: usize,
    pub normal_space: Vec<Vec<i64>>,
}

impl FaceLattice {
    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient_dim
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces.get(id.dim)?.get(id.index)
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn vertex_points(&self) -> Vec<ExponentVector> {
        self.vertices.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Alternating face count including the empty face and the polytope.
    pub fn euler_sum(&self) -> i64 {
        let mut sum = -1;
        for (d, fs) in self.faces.iter().enumerate() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            sum += sign * fs.len() as i64;
        }
        sum + if self.affine_dim.is_multiple_of(2) { 1 } else { -1 }
    }

    /// True when `q` lies in the affine hull of the input points.
    pub fn in_affine_hull(&self, q: &ExponentVector) -> bool {
        let p0 = &self.points[0];
        self.normal_space.iter().all(|n| q.dot(n) == p0.dot(n))
    }
}

/// Affine dimension, spanning points and integer normal space.
pub fn affine_hull(points: &[ExponentVector]) -> AffineHull {
    assert!(!points.is_empty(), "affine hull of an empty point set");
    let d = points[0].dim();
    let p0 = &points[0];
    let diffs: Vec<Row> = points[1..].iter().map(|p| linalg::rational_row(&difference(p, p0))).collect();
    let (_, pivot_columns) = linalg::rref(diffs.clone(), d);
    let dim = pivot_columns.len();

    let mut basis_ids = vec![0];
    let mut chosen: Vec<Row> = Vec::new();
    for (i, row) in diffs.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        chosen.push(row.clone());
        if linalg::rank(&chosen, d) == chosen.len() {
            basis_ids.push(i + 1);
        } else {
            chosen.pop();
        }
    }

    let normal_space = linalg::nullspace(&diffs, d).iter().map(|v| linalg::to_i64(&linalg::primitive(v))).collect();
    AffineHull { dim, basis_ids, normal_space, pivot_columns }
}

fn difference(p: &ExponentVector, q: &ExponentVector) -> Vec<i64> {
    p.0.iter().zip(&q.0).map(|(a, b)| a - b).collect()
}

/// Ambient normal of the hyperplane (relative to the affine hull) through
/// the given points, oriented so every point satisfies `<N, q> <= offset`.
/// `None` when the points do not determine a unique hyperplane or the
/// hyperplane does not support the point set.
pub(crate) fn supporting_plane(
    points: &[ExponentVector],
    normal_space: &[Vec<i64>],
    on_plane: &[usize],
) -> Option<(Vec<i64>, i64)> {
    let d = points[0].dim();
    let anchor = &points[on_plane[0]];
    let mut rows: Vec<Row> = normal_space.iter().map(|n| linalg::rational_row(n)).collect();
    rows.extend(on_plane[1..].iter().map(|&i| linalg::rational_row(&difference(&points[i], anchor))));
    let ns = linalg::nullspace(&rows, d);
    if ns.len() != 1 {
        return None;
    }
    let mut normal = linalg::primitive(&ns[0]);
    let c = linalg::dot_big(&normal, &anchor.0);
    let vals: Vec<BigInt> = points.iter().map(|p| linalg::dot_big(&normal, &p.0)).collect();
    let above = vals.iter().any(|v| *v > c);
    let below = vals.iter().any(|v| *v < c);
    let offset = match (above, below) {
        (true, true) | (false, false) => return None,
        (false, true) => c,
        (true, false) => {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            -c
        }
    };
    let offset = i64::try_from(offset).expect("facet offset exceeds i64");
    Some((linalg::to_i64(&normal), offset))
}

/// Exact convex hull with its full face lattice.
pub fn convex_hull(points: &[ExponentVector]) -> FaceLattice {
    let hull = affine_hull(points);
    let k = hull.dim;
    if k == 0 {
        return trivial_lattice(points, hull);
    }
    let projected: Vec<Vec<i64>> =
        points.iter().map(|p| hull.pivot_columns.iter().map(|&c| p.0[c]).collect()).collect();
    let tight_sets = dd::facet_point_sets(&projected, &hull.basis_ids);
    let facets: Vec<Facet> = tight_sets
        .into_iter()
        .map(|ids| {
            let (normal, offset) = supporting_plane(points, &hull.normal_space, &pick_spanning(points, &ids))
                .expect("double-description ray is not a facet");
            Facet { normal, offset, vertex_ids: ids }
        })
        .collect();
    let faces = close_under_intersection(&facets);
    assemble(points, hull, facets, faces)
}

/// Affinely independent subset of `ids` spanning their affine hull.
fn pick_spanning(points: &[ExponentVector], ids: &[usize]) -> Vec<usize> {
    let sub: Vec<ExponentVector> = ids.iter().map(|&i| points[i].clone()).collect();
    affine_hull(&sub).basis_ids.into_iter().map(|j| ids[j]).collect()
}

fn close_under_intersection(facets: &[Facet]) -> BTreeSet<Vec<usize>> {
    let facet_sets: Vec<BTreeSet<usize>> = facets.iter().map(|f| f.vertex_ids.iter().copied().collect()).collect();
    let mut all: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertex_ids.clone()).collect();
    let mut frontier: Vec<BTreeSet<usize>> = facet_sets.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for f in &facet_sets {
                let i: BTreeSet<usize> = a.intersection(f).copied().collect();
                if i.is_empty() || i == *a {
                    continue;
                }
                if all.insert(i.iter().copied().collect()) {
                    next.push(i);
                }
            }
        }
        frontier = next;
    }
    all
}

fn trivial_lattice(points: &[ExponentVector], hull: AffineHull) -> FaceLattice {
    FaceLattice {
        ambient_dim: points[0].dim(),
        points: points.to_vec(),
        vertices: vec![0],
        faces: Vec::new(),
        facets: Vec::new(),
        affine_dim: 0,
        normal_space: hull.normal_space,
    }
}

/// Builds the lattice from facets and the set of all proper faces (as point
/// id sets). Shared by the production hull and the oracle.
pub(crate) fn assemble(
    points: &[ExponentVector],
    hull: AffineHull,
    mut facets: Vec<Facet>,
    face_sets: BTreeSet<Vec<usize>>,
) -> FaceLattice {
    let k = hull.dim;
    facets.sort_by(|a, b| a.vertex_ids.cmp(&b.vertex_ids));
    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); k];
    for ids in face_sets {
        let pts: Vec<&[i64]> = ids.iter().map(|&i| points[i].coords()).collect();
        let dim = linalg::affine_rank(&pts);
        let incident_facets = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| ids.iter().all(|i| f.vertex_ids.binary_search(i).is_ok()))
            .map(|(j, _)| j)
            .collect();
        faces[dim].push(Face { dim, vertex_ids: ids, incident_facets });
    }
    for fs in faces.iter_mut() {
        fs.sort_by(|a, b| a.vertex_ids.cmp(&b.vertex_ids));
    }
    let vertices = faces[0].iter().map(|f| f.vertex_ids[0]).collect();
    FaceLattice {
        ambient_dim: points[0].dim(),
        points: points.to_vec(),
        vertices,
        faces,
        facets,
        affine_dim: k,
        normal_space: hull.normal_space,
    }
}

/// Finds the facet lying in the plane `<coeffs, q> = offset`, comparing
/// point sets so that the sign of the plane does not matter.
pub fn facet_contains(lattice: &FaceLattice, coeffs: &[i64], offset: i64) -> Option<usize> {
    let on: Vec<usize> =
        lattice.points.iter().enumerate().filter(|(_, q)| q.dot(coeffs) == offset).map(|(i, _)| i).collect();
    if on.is_empty() {
        return None;
    }
    lattice.facets.iter().position(|f| f.vertex_ids == on)
}
