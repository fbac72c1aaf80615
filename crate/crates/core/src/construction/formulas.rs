//! Closed-form canonical-frame coordinates for every constructed object.
//!
//! Conventions: the circumcircle is `x^2 + y^2 = 1` centered at the origin
//! O, the target point is `P = (-k, 0)` (so `Q = (k, 0)`), the generator is
//! `D = (m, n)`, and a vertex with parameter `a` sits at
//! `(2a/(1+a^2), (1-a^2)/(1+a^2))`. Every formula here is a rational
//! function of `(a, m, n, k)`, so on the exact backend the results are
//! exact and the geometric path must reproduce them identically.

use super::scene::ConstructError;
use crate::geom::{points_coincide, Circle, Line, Point};
use crate::scalar::{max_abs, Scalar};

/// Unit-circle vertex for a tangent-half-angle parameter.
pub fn vertex_from_param<S: Scalar>(a: &S) -> Point<S> {
    let a2 = a.clone() * a.clone();
    let den = S::one() + a2.clone();
    Point::new(S::two() * a.clone() / den.clone(), (S::one() - a2) / den)
}

/// Shared denominator of the chord formulas. It equals
/// `|D - A|^2 * (1 + a^2)`, so it vanishes exactly when the generator sits
/// on the vertex.
fn chord_denominator<S: Scalar>(a: &S, m: &S, n: &S) -> (S, S) {
    let a2 = a.clone() * a.clone();
    let m2 = m.clone() * m.clone();
    let n_plus = n.clone() + S::one();
    let n_minus = S::one() - n.clone();
    let lead = (m2.clone() + n_plus.clone() * n_plus) * a2;
    let mid = S::two() * S::two() * m.clone() * a.clone();
    let tail = m2 + n_minus.clone() * n_minus;
    let den = lead.clone() - mid.clone() + tail.clone();
    let scale = max_abs(&[lead, mid, tail]);
    (den, scale)
}

fn check_not_vertex<S: Scalar>(a: &S, d: &Point<S>) -> Result<(), ConstructError> {
    if points_coincide(&vertex_from_param(a), d) {
        return Err(ConstructError::DIsVertex);
    }
    Ok(())
}

/// Line from the vertex with parameter `a` through the generator `d`.
pub fn chord_line<S: Scalar>(a: &S, d: &Point<S>) -> Result<Line<S>, ConstructError> {
    check_not_vertex(a, d)?;
    let (m, n) = (d.x.clone(), d.y.clone());
    let a2 = a.clone() * a.clone();
    let alpha = (n.clone() + S::one()) * a2.clone() + (n.clone() - S::one());
    let beta = -((S::one() + a2.clone()) * m.clone() - S::two() * a.clone());
    let gamma = (S::one() - a2) * m - S::two() * a.clone() * n;
    Ok(Line::new(alpha, beta, gamma))
}

/// Second intersection of the chord from the vertex with parameter `a`
/// through `d` with the unit circumcircle, plus a tangency flag. When the
/// chord is tangent at the vertex, the vertex itself comes back flagged.
pub fn chord_end<S: Scalar>(a: &S, d: &Point<S>) -> Result<(Point<S>, bool), ConstructError> {
    let (m, n) = (d.x.clone(), d.y.clone());
    let (den, den_scale) = chord_denominator(a, &m, &n);
    if S::negligible(&den, &den_scale) {
        return Err(ConstructError::DIsVertex);
    }
    let a2 = a.clone() * a.clone();
    let m2 = m.clone() * m.clone();
    let n2 = n.clone() * n.clone();
    let n_plus = n.clone() + S::one();
    let n_minus = S::one() - n.clone();
    let x_num = S::two()
        * (m.clone() * n_plus.clone() * a2.clone() - (S::one() + m2.clone() - n2) * a.clone()
            + m.clone() * n_minus.clone());
    let y_num = (n_plus.clone() * n_plus - m2.clone()) * a2
        - S::two() * S::two() * m.clone() * n.clone() * a.clone()
        + (m2 - n_minus.clone() * n_minus);
    let e = Point::new(x_num / den.clone(), y_num / den);
    let tangent = points_coincide(&e, &vertex_from_param(a));
    Ok((e, tangent))
}

/// The special point for the vertex with parameter `a`: the fourth vertex
/// of the parallelogram whose diagonals are the chord (vertex to chord end)
/// and the segment from `Q = (k, 0)`.
pub fn special_point<S: Scalar>(a: &S, d: &Point<S>, k: &S) -> Result<Point<S>, ConstructError> {
    let (m, n) = (d.x.clone(), d.y.clone());
    let (den, den_scale) = chord_denominator(a, &m, &n);
    if S::negligible(&den, &den_scale) {
        return Err(ConstructError::DIsVertex);
    }
    let four = S::two() * S::two();
    let a2 = a.clone() * a.clone();
    let a3 = a2.clone() * a.clone();
    let a4 = a2.clone() * a2.clone();
    let m2 = m.clone() * m.clone();
    let n2 = n.clone() * n.clone();
    let n_plus = n.clone() + S::one();
    let n_minus = n.clone() - S::one();
    let s = (S::one() + a2.clone()) * den;

    let c4 = -(k.clone() * (m2.clone() + n_plus.clone() * n_plus.clone())
        - S::two() * m.clone() * n_plus.clone());
    let c3 = four.clone() * (k.clone() * m.clone() + n.clone() * n_plus.clone());
    let c2 = -S::two() * (k.clone() * (m2.clone() + n2.clone() + S::one()) + S::two() * m.clone());
    let c1 = four.clone() * (k.clone() * m.clone() + n.clone() * n_minus.clone());
    let c0 = -(k.clone() * (m2.clone() + n2 - S::two() * n.clone() + S::one())
        + S::two() * m.clone() * n_minus.clone());
    let x_num = c4 * a4.clone() + c3 * a3.clone() + c2 * a2.clone() + c1 * a.clone() + c0;

    let y_num = -S::two()
        * (m2.clone() * a4 + S::two() * m.clone() * n_minus * a3 - four * n.clone() * a2
            + S::two() * m.clone() * n_plus * a.clone()
            - m2);

    Ok(Point::new(x_num / s.clone(), y_num / s))
}

/// Midpoint of the chord from the vertex with parameter `a` to its chord
/// end; equivalently the midpoint of the `Q`-to-special-point diagonal.
/// Independent of `k` by construction.
pub fn chord_midpoint<S: Scalar>(a: &S, d: &Point<S>) -> Result<Point<S>, ConstructError> {
    let (m, n) = (d.x.clone(), d.y.clone());
    let (den, den_scale) = chord_denominator(a, &m, &n);
    if S::negligible(&den, &den_scale) {
        return Err(ConstructError::DIsVertex);
    }
    let a2 = a.clone() * a.clone();
    let one_plus = S::one() + a2.clone();
    let one_minus = S::one() - a2;
    let s = one_plus.clone() * den;
    let common = S::two() * a.clone() * n.clone() - m.clone() * one_minus.clone();
    let x_num = (n.clone() * one_plus.clone() - one_minus) * common.clone();
    let y_num = (S::two() * a.clone() - m.clone() * one_plus) * common;
    Ok(Point::new(x_num / s.clone(), y_num / s))
}

fn require_off_center<S: Scalar>(d: &Point<S>) -> Result<(), ConstructError> {
    if points_coincide(d, &Point::origin()) {
        return Err(ConstructError::DegeneratePointCircle);
    }
    Ok(())
}

/// The special circle through `P = (-k, 0)` with center `(m - k, n)` and
/// squared radius `m^2 + n^2`:
/// `x^2 + y^2 + 2(k - m) x - 2 n y + k(k - 2m) = 0`.
///
/// The y-coefficient here is `-2n`. A once-circulated transcription of this
/// equation has `-2mn` instead, which is inconsistent with the stated
/// center whenever `n != 0` and `m != 1`; see
/// [`special_circle_misprint`], kept for fault-injection demonstrations.
pub fn special_circle<S: Scalar>(d: &Point<S>, k: &S) -> Result<Circle<S>, ConstructError> {
    require_off_center(d)?;
    let (m, n) = (d.x.clone(), d.y.clone());
    Ok(Circle::new(
        k.clone() - m.clone(),
        -n,
        k.clone() * (k.clone() - S::two() * m),
    ))
}

/// Deliberately wrong variant of [`special_circle`] with y-coefficient
/// `-2mn`. It agrees with the correct circle only when `n = 0` or `m = 1`,
/// so a randomized batch detects it. Never used by the construction paths.
pub fn special_circle_misprint<S: Scalar>(
    d: &Point<S>,
    k: &S,
) -> Result<Circle<S>, ConstructError> {
    require_off_center(d)?;
    let (m, n) = (d.x.clone(), d.y.clone());
    Ok(Circle::new(
        k.clone() - m.clone(),
        -(m.clone() * n),
        k.clone() * (k.clone() - S::two() * m),
    ))
}

/// The circle through the three chord midpoints: `x^2 + y^2 - mx - ny = 0`,
/// passing through both O and D with OD as a diameter.
pub fn midpoint_circle<S: Scalar>(d: &Point<S>) -> Result<Circle<S>, ConstructError> {
    require_off_center(d)?;
    let (m, n) = (d.x.clone(), d.y.clone());
    Ok(Circle::new(-(m / S::two()), -(n / S::two()), S::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{line_through, on_circle};
    use crate::scalar::{rat, Rat};

    fn d_s1() -> Point<Rat> {
        Point::new(rat(0, 1), rat(1, 2))
    }

    #[test]
    fn vertex_fixtures() {
        assert_eq!(
            vertex_from_param(&rat(0, 1)),
            Point::new(rat(0, 1), rat(1, 1))
        );
        assert_eq!(
            vertex_from_param(&rat(1, 1)),
            Point::new(rat(1, 1), rat(0, 1))
        );
        assert_eq!(
            vertex_from_param(&rat(-1, 1)),
            Point::new(rat(-1, 1), rat(0, 1))
        );
        // Always exactly on the unit circle.
        let v = vertex_from_param(&rat(22, 7));
        assert_eq!(v.norm_sq(), rat(1, 1));
    }

    #[test]
    fn chord_line_fixtures() {
        let vertical = chord_line(&rat(0, 1), &d_s1()).unwrap();
        assert!(vertical.same_line(&Line::new(rat(1, 1), rat(0, 1), rat(0, 1))));

        let horizontal = chord_line(&rat(1, 1), &Point::origin()).unwrap();
        assert!(horizontal.same_line(&Line::new(rat(0, 1), rat(1, 1), rat(0, 1))));

        // Parameter 0 with a general generator: (n-1)x - my + m = 0.
        let d = Point::new(rat(3, 7), rat(2, 5));
        let l = chord_line(&rat(0, 1), &d).unwrap();
        assert!(l.same_line(&Line::new(rat(2, 5) - rat(1, 1), -rat(3, 7), rat(3, 7))));
        // And it always matches the two-point line.
        let through = line_through(&vertex_from_param(&rat(0, 1)), &d).unwrap();
        assert!(l.same_line(&through));
    }

    #[test]
    fn chord_end_fixtures() {
        let (e, tan) = chord_end(&rat(0, 1), &d_s1()).unwrap();
        assert_eq!(e, Point::new(rat(0, 1), rat(-1, 1)));
        assert!(!tan);

        let (f, _) = chord_end(&rat(1, 1), &d_s1()).unwrap();
        assert_eq!(f, Point::new(rat(-3, 5), rat(4, 5)));

        let (g, _) = chord_end(&rat(-1, 1), &d_s1()).unwrap();
        assert_eq!(g, Point::new(rat(3, 5), rat(4, 5)));
    }

    #[test]
    fn chord_end_tangent_when_generator_on_tangent_line() {
        // Tangent to the unit circle at (0, 1) is y = 1.
        let (e, tangent) = chord_end(&rat(0, 1), &Point::new(rat(1, 3), rat(1, 1))).unwrap();
        assert_eq!(e, Point::new(rat(0, 1), rat(1, 1)));
        assert!(tangent);
    }

    #[test]
    fn chord_ops_reject_generator_at_vertex() {
        let at_vertex = Point::new(rat(0, 1), rat(1, 1));
        assert_eq!(
            chord_line(&rat(0, 1), &at_vertex).unwrap_err(),
            ConstructError::DIsVertex
        );
        assert_eq!(
            chord_end(&rat(0, 1), &at_vertex).unwrap_err(),
            ConstructError::DIsVertex
        );
        assert_eq!(
            special_point(&rat(0, 1), &at_vertex, &rat(1, 2)).unwrap_err(),
            ConstructError::DIsVertex
        );
        assert_eq!(
            chord_midpoint(&rat(0, 1), &at_vertex).unwrap_err(),
            ConstructError::DIsVertex
        );
    }

    #[test]
    fn special_point_fixtures() {
        let k = rat(1, 2);
        assert_eq!(
            special_point(&rat(0, 1), &d_s1(), &k).unwrap(),
            Point::new(rat(-1, 2), rat(0, 1))
        );
        assert_eq!(
            special_point(&rat(1, 1), &d_s1(), &k).unwrap(),
            Point::new(rat(-1, 10), rat(4, 5))
        );
        assert_eq!(
            special_point(&rat(-1, 1), &d_s1(), &k).unwrap(),
            Point::new(rat(-9, 10), rat(4, 5))
        );
    }

    #[test]
    fn chord_midpoint_fixtures() {
        assert_eq!(
            chord_midpoint(&rat(0, 1), &d_s1()).unwrap(),
            Point::origin()
        );
        assert_eq!(
            chord_midpoint(&rat(1, 1), &d_s1()).unwrap(),
            Point::new(rat(1, 5), rat(2, 5))
        );
        assert_eq!(
            chord_midpoint(&rat(-1, 1), &d_s1()).unwrap(),
            Point::new(rat(-1, 5), rat(2, 5))
        );
    }

    #[test]
    fn special_circle_fixture() {
        let c = special_circle(&d_s1(), &rat(1, 2)).unwrap();
        assert_eq!(c, Circle::new(rat(1, 2), rat(-1, 2), rat(1, 4)));
        assert_eq!(c.center(), Point::new(rat(-1, 2), rat(1, 2)));
        assert_eq!(c.radius_sq(), rat(1, 4));
        // Contains P = (-k, 0).
        assert!(on_circle(&c, &Point::new(rat(-1, 2), rat(0, 1))));
    }

    #[test]
    fn special_circle_with_target_at_center() {
        // k = 0: circle centered at the generator, through the origin.
        let d = Point::new(rat(3, 7), rat(-2, 9));
        let c = special_circle(&d, &rat(0, 1)).unwrap();
        assert_eq!(c.center(), d);
        assert!(on_circle(&c, &Point::origin()));
    }

    #[test]
    fn special_circle_rejects_generator_at_center() {
        assert_eq!(
            special_circle(&Point::<Rat>::origin(), &rat(1, 3)).unwrap_err(),
            ConstructError::DegeneratePointCircle
        );
        assert_eq!(
            midpoint_circle(&Point::<Rat>::origin()).unwrap_err(),
            ConstructError::DegeneratePointCircle
        );
    }

    #[test]
    fn misprint_matches_only_in_blind_spots() {
        let k = rat(1, 3);
        // n = 0: the two forms agree.
        let d = Point::new(rat(2, 5), rat(0, 1));
        assert_eq!(
            special_circle(&d, &k).unwrap(),
            special_circle_misprint(&d, &k).unwrap()
        );
        // m = 1: the two forms agree.
        let d = Point::new(rat(1, 1), rat(2, 3));
        assert_eq!(
            special_circle(&d, &k).unwrap(),
            special_circle_misprint(&d, &k).unwrap()
        );
        // Generic generator: they differ.
        let d = d_s1();
        assert_ne!(
            special_circle(&d, &k).unwrap(),
            special_circle_misprint(&d, &k).unwrap()
        );
    }

    #[test]
    fn midpoint_circle_fixtures() {
        let c = midpoint_circle(&d_s1()).unwrap();
        assert_eq!(c, Circle::new(rat(0, 1), rat(-1, 4), rat(0, 1)));
        assert!(on_circle(&c, &Point::origin()));
        assert!(on_circle(&c, &d_s1()));

        let c = midpoint_circle(&Point::new(rat(1, 1), rat(0, 1))).unwrap();
        assert_eq!(c.center(), Point::new(rat(1, 2), rat(0, 1)));
        assert_eq!(c.radius_sq(), rat(1, 4));
        assert_eq!(c.eval(&Point::origin()), rat(0, 1));
    }
}
