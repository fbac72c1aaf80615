//! Property tests for the kernel and construction invariants, all on the
//! exact backend so every assertion is exact equality.

use hagge_core::construction::{
    chord_end, chord_line, chord_midpoint, classic_hagge, special_circle, special_point,
    vertex_from_param, ConstructError,
};
use hagge_core::geom::{
    circle_through_3, collinear, fourth_vertex, line_through, midpoint, on_circle,
    reflect_across_line, second_intersection, Circle, Line, Point,
};
use hagge_core::scalar::{rat, Rat};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-64i64..=64, 1i64..=64).prop_map(|(n, d)| rat(n, d))
}

fn small_point() -> impl Strategy<Value = Point<Rat>> {
    (small_rat(), small_rat()).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #[test]
    fn chord_second_intersection_stays_on_circle(
        center in small_point(),
        a in small_point(),
        d in small_point(),
    ) {
        prop_assume!(a != center && a != d);
        let r2 = (a.clone() - center.clone()).norm_sq();
        let circle = Circle::from_center_radius_sq(&center, &r2);
        let (e, tangent) = second_intersection(&circle, &a, &d).unwrap();
        prop_assert!(on_circle(&circle, &e));
        prop_assert!(collinear(&a, &d, &e));
        // The touch point comes back exactly when the chord is tangent.
        prop_assert_eq!(e == a, tangent);
    }

    #[test]
    fn fitted_circle_contains_its_three_points(
        p1 in small_point(),
        p2 in small_point(),
        p3 in small_point(),
    ) {
        prop_assume!(!collinear(&p1, &p2, &p3));
        let c = circle_through_3(&p1, &p2, &p3).unwrap();
        prop_assert!(on_circle(&c, &p1));
        prop_assert!(on_circle(&c, &p2));
        prop_assert!(on_circle(&c, &p3));
    }

    #[test]
    fn reflection_is_an_involution(
        p in small_point(),
        alpha in small_rat(),
        beta in small_rat(),
        gamma in small_rat(),
    ) {
        prop_assume!(!(alpha == rat(0, 1) && beta == rat(0, 1)));
        let line = Line::new(alpha, beta, gamma);
        let twice = reflect_across_line(&reflect_across_line(&p, &line), &line);
        prop_assert_eq!(twice, p.clone());
        // Points on the line are fixed.
        if line.contains(&p) {
            prop_assert_eq!(reflect_across_line(&p, &line), p);
        }
    }

    #[test]
    fn fourth_vertex_shares_diagonal_midpoint(
        a in small_point(),
        q in small_point(),
        e in small_point(),
    ) {
        let u = fourth_vertex(&a, &q, &e);
        prop_assert_eq!(midpoint(&a, &e), midpoint(&q, &u));
    }

    #[test]
    fn line_equality_is_scale_invariant(
        p1 in small_point(),
        p2 in small_point(),
        factor in small_rat(),
    ) {
        prop_assume!(p1 != p2 && factor != rat(0, 1));
        let line = line_through(&p1, &p2).unwrap();
        let scaled = Line::new(
            line.alpha.clone() * factor.clone(),
            line.beta.clone() * factor.clone(),
            line.gamma.clone() * factor.clone(),
        );
        prop_assert!(line.same_line(&scaled));
        prop_assert_eq!(line.normalized(), scaled.normalized());
    }

    #[test]
    fn parametrized_vertices_sit_on_the_unit_circle(a in small_rat()) {
        prop_assert_eq!(vertex_from_param(&a).norm_sq(), rat(1, 1));
    }

    #[test]
    fn chord_formulas_match_the_geometric_primitives(
        a in small_rat(),
        d in small_point(),
        k in small_rat(),
    ) {
        let vertex = vertex_from_param(&a);
        prop_assume!(vertex != d);
        let unit = Circle::new(rat(0, 1), rat(0, 1), rat(-1, 1));

        let line = chord_line(&a, &d).unwrap();
        prop_assert!(line.same_line(&line_through(&vertex, &d).unwrap()));

        let (e, tangent) = chord_end(&a, &d).unwrap();
        let (e_geo, tangent_geo) = second_intersection(&unit, &vertex, &d).unwrap();
        prop_assert_eq!(&e, &e_geo);
        prop_assert_eq!(tangent, tangent_geo);

        let q = Point::new(k.clone(), rat(0, 1));
        let u = special_point(&a, &d, &k).unwrap();
        prop_assert_eq!(&u, &fourth_vertex(&vertex, &q, &e));

        let mid = chord_midpoint(&a, &d).unwrap();
        prop_assert_eq!(&mid, &midpoint(&vertex, &e));
        // The same point is the midpoint of the other diagonal.
        prop_assert_eq!(&mid, &midpoint(&q, &u));
    }

    #[test]
    fn special_circle_contains_target(d in small_point(), k in small_rat()) {
        prop_assume!(d != Point::origin());
        let circle = special_circle(&d, &k).unwrap();
        prop_assert!(on_circle(&circle, &Point::new(-k.clone(), rat(0, 1))));
        prop_assert_eq!(circle.radius_sq(), d.norm_sq());
    }

    #[test]
    fn classic_hagge_circle_contains_orthocenter(
        a in small_rat(),
        b in small_rat(),
        c in small_rat(),
        d in small_point(),
    ) {
        prop_assume!(a != b && b != c && a != c);
        let vertices = [
            vertex_from_param(&a),
            vertex_from_param(&b),
            vertex_from_param(&c),
        ];
        match classic_hagge(&vertices, &d) {
            Ok(hagge) => prop_assert!(on_circle(&hagge.circle, &hagge.orthocenter)),
            // D at a vertex or on the circumcircle (Steiner collapse) are
            // legitimately outside the claim.
            Err(ConstructError::DIsVertex) | Err(ConstructError::CollinearReflections) => {}
            Err(other) => prop_assert!(false, "unexpected error: {other}"),
        }
    }
}
