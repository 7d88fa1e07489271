mod common;

use std::collections::BTreeSet;

use num_complex::Complex64;
use powergeom::order::{estimate_order, Expr, RaySpec, DEFAULT_TOLERANCE};
use powergeom::{
    convex_hull, parse_differential_sum, shear, support, Coefficient, Convention, DiffMonomial, DifferentialSum,
    ExponentVector, GeometryDim, Regime, ShearDirection,
};
use proptest::prelude::*;

fn monomial() -> impl Strategy<Value = DiffMonomial> {
    ((-4i64..=4).prop_filter("nonzero", |c| *c != 0), -3i64..=3, -3i64..=3, 0u32..=3, 0u32..=3)
        .prop_map(|(c, r, s, a, b)| DiffMonomial::new(Coefficient::integer(c), r, s, a, b))
}

fn diff_sum(max_terms: usize) -> impl Strategy<Value = DifferentialSum> {
    prop::collection::vec(monomial(), 1..=max_terms).prop_map(DifferentialSum::from_terms)
}

/// Sums with parametric and rational coefficients, for parser round trips.
fn rich_sum() -> impl Strategy<Value = DifferentialSum> {
    let coeff = (-6i64..=6, 1i64..=4, prop::sample::select(vec!["", "alpha", "beta", "i"])).prop_map(|(n, d, p)| {
        let c = Coefficient::scalar(powergeom::GaussianRational::from_ratio(n, d));
        match p {
            "" => c,
            "i" => c.scale(&powergeom::GaussianRational::imaginary_unit()),
            name => &c * &Coefficient::param(name),
        }
    });
    let term =
        (coeff, -2i64..=3, -2i64..=3, 0u32..=2, 0u32..=2).prop_map(|(c, r, s, a, b)| DiffMonomial::new(c, r, s, a, b));
    prop::collection::vec(term, 0..=6).prop_map(DifferentialSum::from_terms)
}

fn points(dim: usize, max: usize) -> impl Strategy<Value = Vec<ExponentVector>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, dim), 1..=max)
        .prop_map(|v| v.into_iter().map(ExponentVector::new).collect())
}

fn any_points() -> impl Strategy<Value = Vec<ExponentVector>> {
    prop_oneof![points(2, 10), points(3, 10), points(4, 10)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exponent_is_additive(m1 in monomial(), m2 in monomial()) {
        prop_assert_eq!(common::check_additivity(&m1, &m2), Ok(()));
    }

    #[test]
    fn projection_and_shear_commute_with_exponent(m in monomial()) {
        prop_assert_eq!(common::check_projection(&m), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_format_round_trip(f in rich_sum()) {
        prop_assert_eq!(common::check_round_trip(&f), Ok(()));
    }

    #[test]
    fn sums_stay_canonical(f in rich_sum(), g in rich_sum()) {
        prop_assert!(f.add(&g).is_canonical());
        prop_assert!(f.mul(&g).is_canonical());
        prop_assert_eq!(f.sub(&f), DifferentialSum::zero());
    }

    #[test]
    fn support_of_sum_lies_in_union(f in diff_sum(6), g in diff_sum(6)) {
        for dim in common::DIMS {
            for conv in common::CONVENTIONS {
                let union: BTreeSet<ExponentVector> = support(&f, dim, conv)
                    .point_list()
                    .into_iter()
                    .chain(support(&g, dim, conv).point_list())
                    .collect();
                for p in support(&f.add(&g), dim, conv).point_list() {
                    prop_assert!(union.contains(&p));
                }
            }
        }
    }

    #[test]
    fn support_cardinality_bounded_by_terms(f in diff_sum(8)) {
        let n4 = support(&f, GeometryDim::Four, Convention::Plain).len();
        prop_assert_eq!(n4, f.len());
        prop_assert!(support(&f, GeometryDim::Three, Convention::Plain).len() <= n4);
        prop_assert!(support(&f, GeometryDim::Two, Convention::Plain).len() <= n4);
        prop_assert_eq!(support(&f, GeometryDim::Four, Convention::CountDependent).len(), n4);
    }

    #[test]
    fn truncation_support_is_face(f in diff_sum(7)) {
        for dim in common::DIMS {
            prop_assert_eq!(common::check_truncation_support(&f, dim, Convention::Plain), Ok(()));
        }
    }

    #[test]
    fn hull_facets_support_every_point(pts in any_points()) {
        let l = convex_hull(&pts);
        for f in &l.facets {
            for (i, p) in pts.iter().enumerate() {
                let v = p.dot(&f.normal);
                prop_assert!(v <= f.offset);
                prop_assert_eq!(v == f.offset, f.vertex_ids.contains(&i));
            }
        }
    }

    #[test]
    fn hull_of_vertices_is_same_polytope(pts in any_points()) {
        let l = convex_hull(&pts);
        let again = convex_hull(&l.vertex_points());
        let a: BTreeSet<ExponentVector> = l.vertex_points().into_iter().collect();
        let b: BTreeSet<ExponentVector> = again.vertex_points().into_iter().collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(l.face_counts(), again.face_counts());
        let planes = |x: &powergeom::FaceLattice| -> BTreeSet<(Vec<i64>, i64)> {
            x.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect()
        };
        prop_assert_eq!(planes(&l), planes(&again));
    }

    #[test]
    fn hull_satisfies_euler_relation(pts in any_points()) {
        let l = convex_hull(&pts);
        if l.affine_dim > 0 {
            prop_assert_eq!(l.euler_sum(), 0);
        }
    }

    #[test]
    fn shear_preserves_lattice_and_n1(f in diff_sum(8)) {
        let plain = support(&f, GeometryDim::Four, Convention::Plain).point_list();
        let counted = support(&f, GeometryDim::Four, Convention::CountDependent).point_list();
        let lp = convex_hull(&plain);
        let lc = convex_hull(&counted);
        prop_assert_eq!(lp.face_counts(), lc.face_counts());
        let plain_facets: BTreeSet<(Vec<i64>, BTreeSet<ExponentVector>)> = lp
            .facets
            .iter()
            .map(|fa| (fa.normal.clone(), fa.vertex_ids.iter().map(|&i| lp.points[i].clone()).collect()))
            .collect();
        for fa in &lc.facets {
            let image: BTreeSet<ExponentVector> = fa
                .vertex_ids
                .iter()
                .map(|&i| shear(&lc.points[i], ShearDirection::CountDependentToPlain))
                .collect();
            let n = powergeom::exponent::shear_normal_to_plain(&fa.normal);
            prop_assert_eq!(n[0], fa.normal[0]);
            if lc.is_full_dimensional() {
                prop_assert!(plain_facets.contains(&(n, image)));
            }
        }
    }

    #[test]
    fn rejects_garbage_without_panicking(s in "[zw'()*+^0-9a-c -]{0,24}") {
        let _ = parse_differential_sum(&s);
    }
}

fn eval(e: &Expr) -> impl Fn(Complex64) -> Complex64 + '_ {
    move |z| e.eval(z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_ignores_constant_factors(p in -3i32..=3, c in 0.01f64..100.0, phi in 0.0f64..std::f64::consts::TAU, zero in any::<bool>()) {
        let regime = if zero { Regime::ToZero } else { Regime::ToInfinity };
        let ray = RaySpec::new(phi, regime);
        let base = Expr::parse(&format!("z^{p} + z^{}", p + 1)).unwrap();
        let scaled = Expr::parse(&format!("{c}*(z^{p} + z^{})", p + 1)).unwrap();
        let a = estimate_order(eval(&base), &ray, DEFAULT_TOLERANCE).unwrap();
        let b = estimate_order(eval(&scaled), &ray, DEFAULT_TOLERANCE).unwrap();
        prop_assert!((a.value - b.value).abs() < 1e-9);
    }

    #[test]
    fn order_is_additive_on_products(p1 in -3i32..=3, p2 in -3i32..=3, phi in 0.0f64..std::f64::consts::TAU, zero in any::<bool>()) {
        let regime = if zero { Regime::ToZero } else { Regime::ToInfinity };
        let ray = RaySpec::new(phi, regime);
        let f = Expr::parse(&format!("z^{p1}*(1 + z)")).unwrap();
        let g = Expr::parse(&format!("z^{p2}*(2 + cos(z^0))")).unwrap();
        let fg = Expr::parse(&format!("z^{p1}*(1 + z)*z^{p2}*(2 + cos(z^0))")).unwrap();
        let (a, b, c) = (
            estimate_order(eval(&f), &ray, DEFAULT_TOLERANCE).unwrap(),
            estimate_order(eval(&g), &ray, DEFAULT_TOLERANCE).unwrap(),
            estimate_order(eval(&fg), &ray, DEFAULT_TOLERANCE).unwrap(),
        );
        if a.converged && b.converged && c.converged {
            prop_assert!((c.value - a.value - b.value).abs() <= 2.0 * DEFAULT_TOLERANCE);
        }
    }

    #[test]
    fn pure_powers_converge_exactly(p in -4i32..=4, phi in 0.0f64..std::f64::consts::TAU, zero in any::<bool>()) {
        let regime = if zero { Regime::ToZero } else { Regime::ToInfinity };
        let e = Expr::parse(&format!("z^{p}")).unwrap();
        let est = estimate_order(eval(&e), &RaySpec::new(phi, regime), DEFAULT_TOLERANCE).unwrap();
        prop_assert!((est.value - p as f64).abs() < 1e-9);
        prop_assert!(est.residual < 1e-10);
    }
}
