//! Mapping arbitrary frames onto the canonical one.
//!
//! The canonical frame has the circumcircle as the unit circle at the
//! origin and the target point on the nonpositive x-axis. Reaching it from
//! an arbitrary frame takes a rotation and a scaling by the circumradius,
//! both of which involve square roots, so this module is double-backend
//! only. Exact scenes never need it: the geometric path is already
//! frame-independent.

use super::scene::{ConstructError, Generator, Scene, TriangleSpec};
use crate::geom::{circle_through_3, Circle, Point};
use crate::scalar::REL_TOL;

/// Direct similarity `p -> scale * R * p + translation` with rotation R
/// stored as a cosine/sine pair and `scale > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Similarity {
    pub cos: f64,
    pub sin: f64,
    pub scale: f64,
    pub translation: Point<f64>,
}

impl Similarity {
    pub fn identity() -> Self {
        Similarity {
            cos: 1.0,
            sin: 0.0,
            scale: 1.0,
            translation: Point::new(0.0, 0.0),
        }
    }

    pub fn apply(&self, p: &Point<f64>) -> Point<f64> {
        Point::new(
            self.scale * (self.cos * p.x - self.sin * p.y) + self.translation.x,
            self.scale * (self.sin * p.x + self.cos * p.y) + self.translation.y,
        )
    }

    /// Circles map to circles under a similarity: the center maps as a
    /// point and the squared radius scales by `scale^2`.
    pub fn apply_circle(&self, c: &Circle<f64>) -> Circle<f64> {
        let center = self.apply(&c.center());
        let radius_sq = self.scale * self.scale * c.radius_sq();
        Circle::from_center_radius_sq(&center, &radius_sq)
    }

    pub fn inverse(&self) -> Similarity {
        let inv_scale = 1.0 / self.scale;
        // R^T * (-translation) / scale
        let tx = -(self.cos * self.translation.x + self.sin * self.translation.y) * inv_scale;
        let ty = -(-self.sin * self.translation.x + self.cos * self.translation.y) * inv_scale;
        Similarity {
            cos: self.cos,
            sin: -self.sin,
            scale: inv_scale,
            translation: Point::new(tx, ty),
        }
    }
}

/// The similarity carrying the given triangle and target point to the
/// canonical frame, together with the canonical distance parameter k.
///
/// The circumcenter maps to the origin, the circumradius to 1, and `p` to
/// `(-k, 0)`. When `p` is the circumcenter any rotation would do and the
/// identity rotation is chosen.
pub fn normalizing_transform(
    vertices: &[Point<f64>; 3],
    p: &Point<f64>,
) -> Result<(Similarity, f64), ConstructError> {
    let circumcircle = circle_through_3(&vertices[0], &vertices[1], &vertices[2])
        .map_err(|_| ConstructError::DegenerateTriangle)?;
    let o = circumcircle.center();
    let r = circumcircle.radius_sq().sqrt();
    let v = p.clone() - o.clone();
    let len = v.norm_sq().sqrt();
    let (cos, sin, k) = if len <= REL_TOL * r.max(1.0) {
        (1.0, 0.0, 0.0)
    } else {
        (-v.x / len, v.y / len, len / r)
    };
    let scale = 1.0 / r;
    // translation = -scale * R * o
    let translation = Point::new(
        -scale * (cos * o.x - sin * o.y),
        -scale * (sin * o.x + cos * o.y),
    );
    Ok((
        Similarity {
            cos,
            sin,
            scale,
            translation,
        },
        k,
    ))
}

/// Normalizes a whole scene: vertices, target, and generator all move to
/// the canonical frame. The target is snapped onto `(-k, 0)` exactly (its
/// image differs from that only by floating-point residue).
pub fn normalize_scene(scene: &Scene<f64>) -> Result<(Scene<f64>, Similarity), ConstructError> {
    let vertices = scene.vertices()?;
    let (transform, k) = normalizing_transform(&vertices, &scene.p)?;
    let canonical_vertices = [
        transform.apply(&vertices[0]),
        transform.apply(&vertices[1]),
        transform.apply(&vertices[2]),
    ];
    let generator = match &scene.generator {
        Generator::D(d) => Generator::D(transform.apply(d)),
        Generator::K(center) => Generator::K(transform.apply(center)),
    };
    Ok((
        Scene {
            triangle: TriangleSpec::Vertices(canonical_vertices),
            p: Point::new(-k, 0.0),
            generator,
        },
        transform,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_triangle() -> [Point<f64>; 3] {
        [
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(0.0, 3.0),
        ]
    }

    #[test]
    fn target_at_circumcenter_normalizes_to_k_zero() {
        let (t, k) = normalizing_transform(&right_triangle(), &Point::new(2.0, 1.5)).unwrap();
        assert_eq!(k, 0.0);
        let o_image = t.apply(&Point::new(2.0, 1.5));
        assert!(o_image.x.abs() < 1e-12 && o_image.y.abs() < 1e-12);
    }

    #[test]
    fn generic_target_k_matches_distance_ratio() {
        let (t, k) = normalizing_transform(&right_triangle(), &Point::new(1.0, 1.0)).unwrap();
        // |OP| / R = sqrt(5/4) / (5/2) = 1/sqrt(5)
        assert!((k - 0.4472135955).abs() < 1e-9);
        let p_image = t.apply(&Point::new(1.0, 1.0));
        assert!((p_image.x + k).abs() < 1e-12);
        assert!(p_image.y.abs() < 1e-12);
        // Vertices land on the unit circle.
        for v in right_triangle() {
            assert!((t.apply(&v).norm_sq() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn already_canonical_input_gives_identity() {
        let vertices = [
            Point::new(0.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(-1.0, 0.0),
        ];
        let (t, k) = normalizing_transform(&vertices, &Point::new(-0.5, 0.0)).unwrap();
        assert!((k - 0.5).abs() < 1e-12);
        assert!((t.cos - 1.0).abs() < 1e-12);
        assert!(t.sin.abs() < 1e-12);
        assert!((t.scale - 1.0).abs() < 1e-12);
        assert!(t.translation.x.abs() < 1e-12 && t.translation.y.abs() < 1e-12);
    }

    #[test]
    fn inverse_round_trips_points_and_circles() {
        let (t, _) = normalizing_transform(&right_triangle(), &Point::new(1.0, 1.0)).unwrap();
        let inv = t.inverse();
        for p in [
            Point::new(0.3, -0.7),
            Point::new(5.0, 2.0),
            Point::new(-4.0, 9.0),
        ] {
            let round = inv.apply(&t.apply(&p));
            assert!((round.x - p.x).abs() < 1e-9 && (round.y - p.y).abs() < 1e-9);
        }
        let c = Circle::from_center_radius_sq(&Point::new(1.0, -2.0), &2.25);
        let round = inv.apply_circle(&t.apply_circle(&c));
        assert!((round.radius_sq() - 2.25).abs() < 1e-9);
        let rc = round.center();
        assert!((rc.x - 1.0).abs() < 1e-9 && (rc.y + 2.0).abs() < 1e-9);
    }

    #[test]
    fn normalize_scene_preserves_parallelogram_relation() {
        // Affine combinations with weights summing to 1 commute with any
        // similarity, so K = P + D - O must survive normalization.
        let scene = Scene {
            triangle: TriangleSpec::Vertices(right_triangle()),
            p: Point::new(1.0, 1.0),
            generator: Generator::D(Point::new(2.5, 0.5)),
        };
        let (canonical, t) = normalize_scene(&scene).unwrap();
        let d_arb = Point::new(2.5, 0.5);
        let o_arb = Point::new(2.0, 1.5);
        let k_arb = scene.p.clone() + d_arb.clone() - o_arb;
        let k_canon = canonical.p.clone()
            + canonical
                .generator
                .resolve_d(&canonical.p, &Point::origin())
            - Point::origin();
        let mapped = t.apply(&k_arb);
        assert!((mapped.x - k_canon.x).abs() < 1e-12);
        assert!((mapped.y - k_canon.y).abs() < 1e-12);
    }
}
