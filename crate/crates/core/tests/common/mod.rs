//! Test-side oracles and generators shared by the integration targets.
//! Nothing here calls the library's hull or linear-algebra code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use powergeom::{
    exponent, parse_differential_sum, project, shear, support, truncate, Coefficient, Convention, DiffMonomial,
    DifferentialSum, ExponentVector, FaceId, FaceLattice, GeometryDim, ShearDirection,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const DIMS: [GeometryDim; 3] = [GeometryDim::Two, GeometryDim::Three, GeometryDim::Four];
pub const CONVENTIONS: [Convention; 2] = [Convention::Plain, Convention::CountDependent];

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn pts(raw: &[&[i64]]) -> Vec<ExponentVector> {
    raw.iter().map(|p| ExponentVector::new(p.to_vec())).collect()
}

pub fn sum(text: &str) -> DifferentialSum {
    parse_differential_sum(text).unwrap_or_else(|e| panic!("`{text}`: {e}"))
}

/// Plain Gauss-Jordan elimination on an augmented system `[A | b]`.
/// Returns the unique solution, or `None` if the system is singular or
/// inconsistent.
pub fn solve_unique(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0;
    for col in 0..unknowns {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let lead = rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x = &*x / &lead;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let src = rows[pivot_row].clone();
                for (x, s) in rows[r].iter_mut().zip(src) {
                    *x -= &f * s;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    Some(rows[..unknowns].iter().map(|r| r[unknowns].clone()).collect())
}

/// Solves `q1 + gamma*q2 + gamma1*q3 + gamma2*q4 + f = 0` over the given
/// facet points for `(gamma, gamma1, gamma2, f)`.
pub fn elimination_orders(points: &[ExponentVector]) -> Option<[BigRational; 4]> {
    let rows = points
        .iter()
        .map(|p| {
            let c = &p.0;
            vec![q(c[1], 1), q(c[2], 1), q(c[3], 1), BigRational::one(), q(-c[0], 1)]
        })
        .collect();
    let x = solve_unique(rows, 4)?;
    Some([x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()])
}

fn rank(vectors: &[Vec<BigRational>], ncols: usize) -> usize {
    let mut rows = vectors.to_vec();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if !rows[i][col].is_zero() {
                let f = &rows[i][col] / &rows[r][col];
                let src = rows[r].clone();
                for (x, s) in rows[i].iter_mut().zip(src) {
                    *x -= &f * s;
                }
            }
        }
        r += 1;
    }
    r
}

fn diffs(points: &[&ExponentVector]) -> Vec<Vec<BigRational>> {
    let p0 = points[0];
    points[1..].iter().map(|p| p.0.iter().zip(&p0.0).map(|(a, b)| q(a - b, 1)).collect()).collect()
}

pub fn affine_dim(points: &[&ExponentVector]) -> usize {
    if points.is_empty() {
        return 0;
    }
    rank(&diffs(points), points[0].dim())
}

/// Kernel of the rows, one basis vector per free column.
fn kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][col].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let src = m[r].clone();
                for (x, s) in m[i].iter_mut().zip(src) {
                    *x -= &f * s;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); ncols];
            v[free] = BigRational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Face structure of a point set as point-id sets, by subset enumeration.
#[derive(Debug, PartialEq, Eq)]
pub struct BruteHull {
    pub affine_dim: usize,
    pub vertices: BTreeSet<usize>,
    pub facets: BTreeSet<Vec<usize>>,
    pub faces: BTreeSet<Vec<usize>>,
}

pub fn brute_hull(points: &[ExponentVector]) -> BruteHull {
    let n = points.len();
    let all: Vec<&ExponentVector> = points.iter().collect();
    let k = affine_dim(&all);
    let d = points[0].dim();
    let mut facets = BTreeSet::new();
    if k > 0 {
        for s in subsets(n, k) {
            let chosen: Vec<&ExponentVector> = s.iter().map(|&i| &points[i]).collect();
            if affine_dim(&chosen) != k - 1 {
                continue;
            }
            let base = chosen[0];
            let value = |v: &[BigRational], p: &ExponentVector| -> BigRational {
                v.iter().zip(p.0.iter().zip(&base.0)).map(|(a, (x, y))| a * q(x - y, 1)).sum()
            };
            let Some(v) =
                kernel(&diffs(&chosen), d).into_iter().find(|v| points.iter().any(|p| !value(v, p).is_zero()))
            else {
                continue;
            };
            let vals: Vec<BigRational> = points.iter().map(|p| value(&v, p)).collect();
            let pos = vals.iter().any(|x| x.is_positive());
            let neg = vals.iter().any(|x| x.is_negative());
            if pos && neg {
                continue;
            }
            facets.insert((0..n).filter(|&i| vals[i].is_zero()).collect::<Vec<usize>>());
        }
    }
    let mut faces: BTreeSet<Vec<usize>> = facets.clone();
    loop {
        let mut grown = faces.clone();
        for a in &faces {
            for b in &faces {
                let meet: Vec<usize> = a.iter().filter(|i| b.contains(i)).copied().collect();
                if !meet.is_empty() {
                    grown.insert(meet);
                }
            }
        }
        if grown.len() == faces.len() {
            break;
        }
        faces = grown;
    }
    let vertices = if k == 0 {
        (0..n).collect()
    } else {
        faces
            .iter()
            .filter(|f| affine_dim(&f.iter().map(|&i| &points[i]).collect::<Vec<_>>()) == 0)
            .flatten()
            .copied()
            .collect()
    };
    BruteHull { affine_dim: k, vertices, facets, faces }
}

/// Differences between a production lattice and the brute-force one.
pub fn hull_mismatch(points: &[ExponentVector], lattice: &FaceLattice) -> Option<String> {
    let brute = brute_hull(points);
    if lattice.affine_dim != brute.affine_dim {
        return Some(format!("affine dim {} vs {}", lattice.affine_dim, brute.affine_dim));
    }
    let facets: BTreeSet<Vec<usize>> = lattice.facets.iter().map(|f| f.vertex_ids.clone()).collect();
    if facets != brute.facets {
        return Some(format!("facets {:?} vs {:?}", facets, brute.facets));
    }
    let faces: BTreeSet<Vec<usize>> = lattice.faces.iter().flatten().map(|f| f.vertex_ids.clone()).collect();
    if brute.affine_dim > 0 && faces != brute.faces {
        return Some(format!("faces {:?} vs {:?}", faces, brute.faces));
    }
    // Duplicated input points all count as vertex ids on the brute side.
    let vertex_points: BTreeSet<&ExponentVector> = lattice.vertices.iter().map(|&i| &points[i]).collect();
    let brute_points: BTreeSet<&ExponentVector> = brute.vertices.iter().map(|&i| &points[i]).collect();
    if vertex_points != brute_points {
        return Some(format!("vertices {:?} vs {:?}", vertex_points, brute_points));
    }
    for f in &lattice.facets {
        for (i, p) in points.iter().enumerate() {
            let v = p.dot(&f.normal);
            if v > f.offset || ((v == f.offset) != f.vertex_ids.contains(&i)) {
                return Some(format!("facet {:?} not supporting at point {i}", f.normal));
            }
        }
    }
    None
}

pub fn random_points(rng: &mut ChaCha8Rng, dim: usize, max_points: usize) -> Vec<ExponentVector> {
    let n = rng.gen_range(1..=max_points);
    (0..n).map(|_| ExponentVector::new((0..dim).map(|_| rng.gen_range(-5..=5)).collect::<Vec<i64>>())).collect()
}

pub fn random_monomial(rng: &mut ChaCha8Rng) -> DiffMonomial {
    let c = loop {
        let c = rng.gen_range(-4..=4);
        if c != 0 {
            break c;
        }
    };
    DiffMonomial::new(
        Coefficient::integer(c),
        rng.gen_range(-3..=3),
        rng.gen_range(-3..=3),
        rng.gen_range(0..=3),
        rng.gen_range(0..=3),
    )
}

pub fn random_sum(rng: &mut ChaCha8Rng, max_terms: usize) -> DifferentialSum {
    let n = rng.gen_range(1..=max_terms);
    DifferentialSum::from_terms((0..n).map(|_| random_monomial(rng)))
}

pub fn check_additivity(m1: &DiffMonomial, m2: &DiffMonomial) -> Result<(), String> {
    let prod = m1.mul(m2);
    for dim in DIMS {
        for conv in CONVENTIONS {
            let lhs = exponent(&prod, dim, conv);
            let rhs = &exponent(m1, dim, conv) + &exponent(m2, dim, conv);
            if lhs != rhs {
                return Err(format!("Q({m1} * {m2}) = {lhs} but Q sum = {rhs} ({dim:?}, {conv})"));
            }
        }
    }
    Ok(())
}

pub fn check_projection(m: &DiffMonomial) -> Result<(), String> {
    let plain = exponent(m, GeometryDim::Four, Convention::Plain);
    for dim in [GeometryDim::Two, GeometryDim::Three] {
        for conv in CONVENTIONS {
            if project(&plain, dim) != exponent(m, dim, conv) {
                return Err(format!("projection of {m} to {dim:?} does not commute"));
            }
        }
    }
    let counted = exponent(m, GeometryDim::Four, Convention::CountDependent);
    if shear(&plain, ShearDirection::PlainToCountDependent) != counted
        || shear(&counted, ShearDirection::CountDependentToPlain) != plain
    {
        return Err(format!("shear does not relate the conventions for {m}"));
    }
    Ok(())
}

/// Every face's truncation has exactly the face's points as support.
pub fn check_truncation_support(f: &DifferentialSum, dim: GeometryDim, conv: Convention) -> Result<(), String> {
    let sup = support(f, dim, conv);
    let lattice = powergeom::convex_hull(&sup.point_list());
    for (d, faces) in lattice.faces.iter().enumerate() {
        for (index, face) in faces.iter().enumerate() {
            let t = truncate(f, &lattice, FaceId { dim: d, index }, dim, conv).map_err(|e| e.to_string())?;
            let got: BTreeSet<ExponentVector> = support(&t.sum, dim, conv).point_list().into_iter().collect();
            let want: BTreeSet<ExponentVector> = face.vertex_ids.iter().map(|&i| lattice.points[i].clone()).collect();
            if got != want {
                return Err(format!("face {d}/{index} of {f}: truncation support {got:?} vs face {want:?}"));
            }
        }
    }
    Ok(())
}

pub fn check_round_trip(f: &DifferentialSum) -> Result<(), String> {
    let text = powergeom::format(f);
    let back = parse_differential_sum(&text).map_err(|e| format!("`{text}` fails to parse: {e}"))?;
    if &back != f {
        return Err(format!("`{text}` parses to {back}"));
    }
    Ok(())
}

/// Points by 1-based label.
pub fn pick_points(points: &[ExponentVector], labels: &[usize]) -> Vec<ExponentVector> {
    labels.iter().map(|&l| points[l - 1].clone()).collect()
}
