//! Running the construction end to end, the homothety between its two
//! circles, and the classic orthocenter construction it generalizes.

use super::formulas;
use super::scene::{ConstructError, Scene};
use crate::geom::{
    circle_through_3, fourth_vertex, line_through, midpoint, points_coincide, second_intersection,
    Circle, GeomError, Point,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// Canonical-frame coordinate formulas; requires a canonical scene.
    ClosedForm,
    /// Chord/parallelogram primitives; works in any frame.
    Geometric,
}

impl PathKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PathKind::ClosedForm => "closed-form",
            PathKind::Geometric => "geometric",
        }
    }
}

/// Degeneracy and warning markers. The construction is still carried out
/// formally whenever it can be; these record what a caller may need to
/// treat specially.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OutputFlags {
    /// Per-chord tangency: the chord through D touches the circumcircle at
    /// the vertex, so the chord end equals the vertex.
    pub tangent_chords: [bool; 3],
    /// D coincides with the circumcenter: all special points collapse onto
    /// P and both circles shrink to points (none are emitted).
    pub d_at_circumcenter: bool,
    /// D lies on a sideline of the triangle: two chord ends coincide with
    /// vertices and the fitted circles are underdetermined.
    pub d_on_sideline: bool,
    /// P lies on a sideline of the triangle. A warning only: the
    /// construction and its circles remain valid.
    pub p_on_sideline: bool,
}

impl OutputFlags {
    /// True when the output is structurally degenerate (collapsed points
    /// or missing circles), as opposed to merely carrying a warning.
    pub fn degenerate(&self) -> bool {
        self.tangent_chords.iter().any(|t| *t) || self.d_at_circumcenter || self.d_on_sideline
    }
}

/// Everything the construction produces for one scene.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionOutput<S> {
    pub path: PathKind,
    pub vertices: [Point<S>; 3],
    pub circumcenter: Point<S>,
    pub circumcircle: Circle<S>,
    pub p: Point<S>,
    /// Antipode of P through O, the homothety center.
    pub q: Point<S>,
    pub d: Point<S>,
    /// Desired center K of the special circle (`K = P + D - O`).
    pub special_center: Point<S>,
    /// Second chord intersections E, F, G (per vertex).
    pub chord_ends: [Point<S>; 3],
    /// Special points U, V, W: fourth parallelogram vertices.
    pub special_points: [Point<S>; 3],
    /// Diagonal midpoints U', V', W'.
    pub chord_midpoints: [Point<S>; 3],
    /// Circle through U, V, W; absent when degenerate.
    pub special_circle: Option<Circle<S>>,
    /// Circle through U', V', W'; absent when degenerate.
    pub midpoint_circle: Option<Circle<S>>,
    pub flags: OutputFlags,
}

impl<S: Scalar> ConstructionOutput<S> {
    pub fn to_double(&self) -> ConstructionOutput<f64> {
        let pt = |p: &Point<S>| p.to_f64();
        let circ = |c: &Circle<S>| Circle::new(c.g.to_f64(), c.f.to_f64(), c.t.to_f64());
        ConstructionOutput {
            path: self.path,
            vertices: [0, 1, 2].map(|i| pt(&self.vertices[i])),
            circumcenter: pt(&self.circumcenter),
            circumcircle: circ(&self.circumcircle),
            p: pt(&self.p),
            q: pt(&self.q),
            d: pt(&self.d),
            special_center: pt(&self.special_center),
            chord_ends: [0, 1, 2].map(|i| pt(&self.chord_ends[i])),
            special_points: [0, 1, 2].map(|i| pt(&self.special_points[i])),
            chord_midpoints: [0, 1, 2].map(|i| pt(&self.chord_midpoints[i])),
            special_circle: self.special_circle.as_ref().map(circ),
            midpoint_circle: self.midpoint_circle.as_ref().map(circ),
            flags: self.flags.clone(),
        }
    }
}

/// Sidelines opposite each vertex: BC, CA, AB.
fn sidelines<S: Scalar>(
    vertices: &[Point<S>; 3],
) -> Result<[crate::geom::Line<S>; 3], ConstructError> {
    Ok([
        line_through(&vertices[1], &vertices[2])?,
        line_through(&vertices[2], &vertices[0])?,
        line_through(&vertices[0], &vertices[1])?,
    ])
}

fn on_any_sideline<S: Scalar>(lines: &[crate::geom::Line<S>; 3], p: &Point<S>) -> bool {
    lines.iter().any(|l| l.contains(p))
}

/// Runs the construction for a scene along the requested path.
///
/// Both paths produce the same output layout; on exact canonical scenes
/// they agree value for value. A generator at the circumcenter is not an
/// error: the output is flagged and carries no circles.
pub fn construct<S: Scalar>(
    scene: &Scene<S>,
    path: PathKind,
) -> Result<ConstructionOutput<S>, ConstructError> {
    match path {
        PathKind::ClosedForm => construct_closed_form(scene),
        PathKind::Geometric => construct_geometric(scene),
    }
}

fn construct_closed_form<S: Scalar>(
    scene: &Scene<S>,
) -> Result<ConstructionOutput<S>, ConstructError> {
    let params = scene.params()?;
    let k = scene.canonical_k()?;
    let vertices = params.vertices();
    let o = Point::origin();
    let circumcircle = Circle::new(S::zero(), S::zero(), -S::one());
    let p = Point::new(-k.clone(), S::zero());
    let q = Point::new(k.clone(), S::zero());
    let d = scene.generator.resolve_d(&p, &o);

    for v in &vertices {
        if points_coincide(v, &d) {
            return Err(ConstructError::DIsVertex);
        }
    }
    let d_at_circumcenter = points_coincide(&d, &o);

    let mut chord_ends = Vec::with_capacity(3);
    let mut special_points = Vec::with_capacity(3);
    let mut chord_midpoints = Vec::with_capacity(3);
    let mut tangent_chords = [false; 3];
    for (i, param) in params.values().iter().enumerate() {
        let (e, tangent) = formulas::chord_end(param, &d)?;
        tangent_chords[i] = tangent;
        chord_ends.push(e);
        special_points.push(formulas::special_point(param, &d, &k)?);
        chord_midpoints.push(formulas::chord_midpoint(param, &d)?);
    }

    let lines = sidelines(&vertices)?;
    let flags = OutputFlags {
        tangent_chords,
        d_at_circumcenter,
        d_on_sideline: on_any_sideline(&lines, &d),
        p_on_sideline: on_any_sideline(&lines, &p),
    };

    let (special_circle, midpoint_circle) = if d_at_circumcenter {
        (None, None)
    } else {
        (
            Some(formulas::special_circle(&d, &k)?),
            Some(formulas::midpoint_circle(&d)?),
        )
    };

    let special_center = p.clone() + d.clone() - o.clone();
    Ok(ConstructionOutput {
        path: PathKind::ClosedForm,
        vertices,
        circumcenter: o,
        circumcircle,
        p,
        q,
        d,
        special_center,
        chord_ends: to_array(chord_ends),
        special_points: to_array(special_points),
        chord_midpoints: to_array(chord_midpoints),
        special_circle,
        midpoint_circle,
        flags,
    })
}

fn construct_geometric<S: Scalar>(
    scene: &Scene<S>,
) -> Result<ConstructionOutput<S>, ConstructError> {
    let vertices = scene.vertices()?;
    let circumcircle = circle_through_3(&vertices[0], &vertices[1], &vertices[2])
        .map_err(|_| ConstructError::DegenerateTriangle)?;
    let o = circumcircle.center();
    let p = scene.p.clone();
    let q = o.clone() + o.clone() - p.clone();
    let d = scene.generator.resolve_d(&p, &o);

    for v in &vertices {
        if points_coincide(v, &d) {
            return Err(ConstructError::DIsVertex);
        }
    }
    let d_at_circumcenter = points_coincide(&d, &o);

    let mut chord_ends = Vec::with_capacity(3);
    let mut special_points = Vec::with_capacity(3);
    let mut chord_midpoints = Vec::with_capacity(3);
    let mut tangent_chords = [false; 3];
    for (i, v) in vertices.iter().enumerate() {
        let (e, tangent) = second_intersection(&circumcircle, v, &d).map_err(|err| match err {
            GeomError::CoincidentPoints => ConstructError::DIsVertex,
            other => ConstructError::Geom(other),
        })?;
        tangent_chords[i] = tangent;
        let u = fourth_vertex(v, &q, &e);
        // The k-dependent route on purpose: its k-independence is one of
        // the verified claims.
        chord_midpoints.push(midpoint(&q, &u));
        special_points.push(u);
        chord_ends.push(e);
    }

    let lines = sidelines(&vertices)?;
    let d_on_sideline = on_any_sideline(&lines, &d);
    let flags = OutputFlags {
        tangent_chords,
        d_at_circumcenter,
        d_on_sideline,
        p_on_sideline: on_any_sideline(&lines, &p),
    };

    // With D on a sideline two chord ends land on vertices and the special
    // points pairwise coincide, so the fits are underdetermined.
    let (special_circle, midpoint_circle) = if d_at_circumcenter || d_on_sideline {
        (None, None)
    } else {
        (
            Some(circle_through_3(
                &special_points[0],
                &special_points[1],
                &special_points[2],
            )?),
            Some(circle_through_3(
                &chord_midpoints[0],
                &chord_midpoints[1],
                &chord_midpoints[2],
            )?),
        )
    };

    let special_center = p.clone() + d.clone() - o.clone();
    Ok(ConstructionOutput {
        path: PathKind::Geometric,
        vertices,
        circumcenter: o,
        circumcircle,
        p,
        q,
        d,
        special_center,
        chord_ends: to_array(chord_ends),
        special_points: to_array(special_points),
        chord_midpoints: to_array(chord_midpoints),
        special_circle,
        midpoint_circle,
        flags,
    })
}

fn to_array<S>(v: Vec<Point<S>>) -> [Point<S>; 3] {
    v.try_into().ok().expect("exactly three points")
}

/// Image of the construction's midpoint circle under the homothety
/// centered at Q with the given factor. Factor 2 reproduces the special
/// circle; factor 0 collapses to the point circle at Q.
pub fn homothety_circle<S: Scalar>(
    output: &ConstructionOutput<S>,
    factor: &S,
) -> Result<Circle<S>, ConstructError> {
    let base = output
        .midpoint_circle
        .as_ref()
        .ok_or(ConstructError::DegenerateInput)?;
    let q = &output.q;
    let center = base.center();
    let image_center = q.clone() + (center - q.clone()).scaled(factor);
    let image_radius_sq = factor.clone() * factor.clone() * base.radius_sq();
    Ok(Circle::from_center_radius_sq(
        &image_center,
        &image_radius_sq,
    ))
}

/// Orthocenter of a triangle with circumcenter `o`: `A + B + C - 2O`.
pub fn orthocenter<S: Scalar>(vertices: &[Point<S>; 3], o: &Point<S>) -> Point<S> {
    vertices[0].clone() + vertices[1].clone() + vertices[2].clone() - o.clone() - o.clone()
}

/// The classic construction this crate generalizes, kept for cross-checks.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicHagge<S> {
    /// Second chord intersections E, F, G through the generator.
    pub chord_ends: [Point<S>; 3],
    /// E, F, G reflected across the opposite sidelines BC, CA, AB.
    pub reflections: [Point<S>; 3],
    /// Circle through the three reflections; contains the orthocenter.
    pub circle: Circle<S>,
    pub orthocenter: Point<S>,
}

/// Reflect the chord ends through D in the triangle's sides; the circle
/// through the three reflections passes through the orthocenter.
///
/// Fails with [`ConstructError::CollinearReflections`] when the three
/// reflections fall on one line, which happens exactly when D lies on the
/// circumcircle (all chord ends collapse onto D).
pub fn classic_hagge<S: Scalar>(
    vertices: &[Point<S>; 3],
    d: &Point<S>,
) -> Result<ClassicHagge<S>, ConstructError> {
    let circumcircle = circle_through_3(&vertices[0], &vertices[1], &vertices[2])
        .map_err(|_| ConstructError::DegenerateTriangle)?;
    for v in vertices {
        if points_coincide(v, d) {
            return Err(ConstructError::DIsVertex);
        }
    }
    let lines = sidelines(vertices)?;
    let mut chord_ends = Vec::with_capacity(3);
    let mut reflections = Vec::with_capacity(3);
    for (v, side) in vertices.iter().zip(lines.iter()) {
        let (e, _) = second_intersection(&circumcircle, v, d).map_err(|err| match err {
            GeomError::CoincidentPoints => ConstructError::DIsVertex,
            other => ConstructError::Geom(other),
        })?;
        reflections.push(crate::geom::reflect_across_line(&e, side));
        chord_ends.push(e);
    }
    let circle = circle_through_3(&reflections[0], &reflections[1], &reflections[2])
        .map_err(|_| ConstructError::CollinearReflections)?;
    let orthocenter = orthocenter(vertices, &circumcircle.center());
    Ok(ClassicHagge {
        chord_ends: to_array(chord_ends),
        reflections: to_array(reflections),
        circle,
        orthocenter,
    })
}
