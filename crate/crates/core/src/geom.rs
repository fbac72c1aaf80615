//! Frame-agnostic plane primitives: points, lines in general form, circles
//! in general form, and the handful of constructions everything else is
//! built from.
//!
//! All operations are pure functions over immutable values. On the exact
//! backend every predicate is decided exactly; on the double backend
//! residuals are compared against [`Scalar::negligible`] using the largest
//! intermediate magnitude as the scale.

use crate::scalar::{max_abs, Scalar};
use std::ops::{Add, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum GeomError {
    #[error("the two points coincide")]
    CoincidentPoints,
    #[error("point does not lie on the circle")]
    PointNotOnCircle,
    #[error("the three points are collinear")]
    CollinearPoints,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(S::zero(), S::zero())
    }

    pub fn scaled(&self, f: &S) -> Self {
        Point::new(self.x.clone() * f.clone(), self.y.clone() * f.clone())
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    /// z-component of the cross product, treating both points as vectors.
    pub fn cross(&self, other: &Self) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl<S: Scalar> Add for Point<S> {
    type Output = Point<S>;
    fn add(self, rhs: Point<S>) -> Point<S> {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<S: Scalar> Sub for Point<S> {
    type Output = Point<S>;
    fn sub(self, rhs: Point<S>) -> Point<S> {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// Line in general form `alpha*x + beta*y + gamma = 0`.
///
/// Coefficients are only defined up to a nonzero factor; use
/// [`Line::same_line`] or [`Line::normalized`] for comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line<S> {
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
}

impl<S: Scalar> Line<S> {
    pub fn new(alpha: S, beta: S, gamma: S) -> Self {
        Line { alpha, beta, gamma }
    }

    /// Signed residual of substituting `p` into the line equation.
    pub fn eval(&self, p: &Point<S>) -> S {
        self.alpha.clone() * p.x.clone() + self.beta.clone() * p.y.clone() + self.gamma.clone()
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        let scale = max_abs(&[
            self.alpha.clone() * p.x.clone(),
            self.beta.clone() * p.y.clone(),
            self.gamma.clone(),
        ]);
        S::negligible(&self.eval(p), &scale)
    }

    /// Scales so the first nonzero coefficient (alpha, then beta) becomes 1.
    pub fn normalized(&self) -> Line<S> {
        let d = if !self.alpha.is_zero() {
            self.alpha.clone()
        } else {
            self.beta.clone()
        };
        Line::new(
            self.alpha.clone() / d.clone(),
            self.beta.clone() / d.clone(),
            self.gamma.clone() / d,
        )
    }

    /// True when the two coefficient triples are proportional, i.e. the
    /// lines coincide as point sets.
    pub fn same_line(&self, other: &Line<S>) -> bool {
        let pairs = [
            (
                self.alpha.clone(),
                other.beta.clone(),
                self.beta.clone(),
                other.alpha.clone(),
            ),
            (
                self.alpha.clone(),
                other.gamma.clone(),
                self.gamma.clone(),
                other.alpha.clone(),
            ),
            (
                self.beta.clone(),
                other.gamma.clone(),
                self.gamma.clone(),
                other.beta.clone(),
            ),
        ];
        pairs.into_iter().all(|(a, b, c, d)| {
            let lhs = a * b;
            let rhs = c * d;
            let scale = max_abs(&[lhs.clone(), rhs.clone()]);
            S::negligible(&(lhs - rhs), &scale)
        })
    }
}

/// Circle in general form `x^2 + y^2 + 2g*x + 2f*y + t = 0`, so the center
/// is `(-g, -f)` and the squared radius is `g^2 + f^2 - t`.
///
/// A zero squared radius (a point circle) is representable; callers that
/// consider it degenerate must flag it themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle<S> {
    pub g: S,
    pub f: S,
    pub t: S,
}

impl<S: Scalar> Circle<S> {
    pub fn new(g: S, f: S, t: S) -> Self {
        Circle { g, f, t }
    }

    pub fn from_center_radius_sq(center: &Point<S>, radius_sq: &S) -> Self {
        let g = -center.x.clone();
        let f = -center.y.clone();
        let t = center.norm_sq() - radius_sq.clone();
        Circle { g, f, t }
    }

    pub fn center(&self) -> Point<S> {
        Point::new(-self.g.clone(), -self.f.clone())
    }

    pub fn radius_sq(&self) -> S {
        self.g.clone() * self.g.clone() + self.f.clone() * self.f.clone() - self.t.clone()
    }

    /// Signed residual of substituting `p` into the circle equation.
    pub fn eval(&self, p: &Point<S>) -> S {
        p.x.clone() * p.x.clone()
            + p.y.clone() * p.y.clone()
            + S::two() * self.g.clone() * p.x.clone()
            + S::two() * self.f.clone() * p.y.clone()
            + self.t.clone()
    }

    /// Magnitude scale of the substitution terms, for tolerance-aware
    /// membership tests.
    fn eval_scale(&self, p: &Point<S>) -> S {
        max_abs(&[
            S::one(),
            p.x.clone() * p.x.clone(),
            p.y.clone() * p.y.clone(),
            S::two() * self.g.clone() * p.x.clone(),
            S::two() * self.f.clone() * p.y.clone(),
            self.t.clone(),
        ])
    }

    /// Scaled membership residual: `|eval(p)|` divided by the largest term
    /// magnitude. Zero on the exact backend iff `p` lies on the circle.
    pub fn membership_residual(&self, p: &Point<S>) -> S {
        self.eval(p).abs() / self.eval_scale(p)
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        S::negligible(&self.eval(p), &self.eval_scale(p))
    }
}

/// Line through two distinct points.
pub fn line_through<S: Scalar>(p1: &Point<S>, p2: &Point<S>) -> Result<Line<S>, GeomError> {
    if p1 == p2 {
        return Err(GeomError::CoincidentPoints);
    }
    Ok(Line::new(
        p1.y.clone() - p2.y.clone(),
        p2.x.clone() - p1.x.clone(),
        p1.x.clone() * p2.y.clone() - p2.x.clone() * p1.y.clone(),
    ))
}

/// Second intersection of the line `a d` with circle `c`, where `a` already
/// lies on `c`.
///
/// Substituting `a + t*(d - a)` into the circle equation gives a quadratic
/// with the known root `t = 0`; the other root is rational in the inputs
/// (the chord relation), so no square root is ever taken. If the line is
/// tangent at `a` the touch point itself is returned with the flag set.
pub fn second_intersection<S: Scalar>(
    c: &Circle<S>,
    a: &Point<S>,
    d: &Point<S>,
) -> Result<(Point<S>, bool), GeomError> {
    if a == d {
        return Err(GeomError::CoincidentPoints);
    }
    if !c.contains(a) {
        return Err(GeomError::PointNotOnCircle);
    }
    let v = d.clone() - a.clone();
    // Remaining root of t^2*|v|^2 + 2*t*(a.v + g*vx + f*vy) = 0.
    let half_lin = a.dot(&v) + c.g.clone() * v.x.clone() + c.f.clone() * v.y.clone();
    let scale = max_abs(&[
        a.x.clone() * v.x.clone(),
        a.y.clone() * v.y.clone(),
        c.g.clone() * v.x.clone(),
        c.f.clone() * v.y.clone(),
    ]);
    if S::negligible(&half_lin, &scale) {
        return Ok((a.clone(), true));
    }
    let t = -(S::two() * half_lin) / v.norm_sq();
    Ok((a.clone() + v.scaled(&t), false))
}

/// Circle through three non-collinear points, by solving the linear system
/// in `(g, f, t)` that their three circle equations form.
///
/// This is the fitting oracle used to validate closed-form circles: it
/// knows nothing about where the points came from.
pub fn circle_through_3<S: Scalar>(
    p1: &Point<S>,
    p2: &Point<S>,
    p3: &Point<S>,
) -> Result<Circle<S>, GeomError> {
    let w1 = p1.norm_sq();
    let w2 = p2.norm_sq();
    let w3 = p3.norm_sq();
    // Pairwise differences eliminate t:
    //   2*(x1-x2)*g + 2*(y1-y2)*f = w2 - w1
    //   2*(x2-x3)*g + 2*(y2-y3)*f = w3 - w2
    let ax = p1.x.clone() - p2.x.clone();
    let ay = p1.y.clone() - p2.y.clone();
    let bx = p2.x.clone() - p3.x.clone();
    let by = p2.y.clone() - p3.y.clone();
    let lhs = ax.clone() * by.clone();
    let rhs = bx.clone() * ay.clone();
    let det = lhs.clone() - rhs.clone();
    if S::negligible(&det, &max_abs(&[lhs, rhs])) {
        return Err(GeomError::CollinearPoints);
    }
    let r1 = (w2.clone() - w1.clone()) / S::two();
    let r2 = (w3 - w2) / S::two();
    let g = (r1.clone() * by - r2.clone() * ay) / det.clone();
    let f = (ax * r2 - bx * r1) / det;
    let t = -(w1 + S::two() * g.clone() * p1.x.clone() + S::two() * f.clone() * p1.y.clone());
    Ok(Circle::new(g, f, t))
}

/// Fourth vertex of the parallelogram with vertices `a, q, e, result` in
/// which `a e` and `q result` are the diagonals: `a + e - q`.
///
/// Flat (degenerate) parallelograms are allowed; the midpoint property
/// `midpoint(a, e) = midpoint(q, result)` holds unconditionally.
pub fn fourth_vertex<S: Scalar>(a: &Point<S>, q: &Point<S>, e: &Point<S>) -> Point<S> {
    a.clone() + e.clone() - q.clone()
}

/// Mirror image of `p` across `l`.
pub fn reflect_across_line<S: Scalar>(p: &Point<S>, l: &Line<S>) -> Point<S> {
    let norm_sq = l.alpha.clone() * l.alpha.clone() + l.beta.clone() * l.beta.clone();
    let shift = S::two() * l.eval(p) / norm_sq;
    Point::new(
        p.x.clone() - shift.clone() * l.alpha.clone(),
        p.y.clone() - shift * l.beta.clone(),
    )
}

pub fn midpoint<S: Scalar>(p1: &Point<S>, p2: &Point<S>) -> Point<S> {
    Point::new(
        (p1.x.clone() + p2.x.clone()) / S::two(),
        (p1.y.clone() + p2.y.clone()) / S::two(),
    )
}

/// Three-point collinearity via the orientation determinant.
pub fn collinear<S: Scalar>(p1: &Point<S>, p2: &Point<S>, p3: &Point<S>) -> bool {
    let v = p2.clone() - p1.clone();
    let w = p3.clone() - p1.clone();
    let lhs = v.x.clone() * w.y.clone();
    let rhs = v.y.clone() * w.x.clone();
    let scale = max_abs(&[lhs.clone(), rhs.clone()]);
    S::negligible(&(lhs - rhs), &scale)
}

/// Membership test by substitution into the circle equation.
pub fn on_circle<S: Scalar>(c: &Circle<S>, p: &Point<S>) -> bool {
    c.contains(p)
}

/// Backend-tolerant coincidence test with an absolute floor of 1 on the
/// comparison scale (coordinates in canonical scenes are of unit order).
pub fn points_coincide<S: Scalar>(p: &Point<S>, q: &Point<S>) -> bool {
    let sx = max_abs(&[S::one(), p.x.clone(), q.x.clone()]);
    let sy = max_abs(&[S::one(), p.y.clone(), q.y.clone()]);
    S::negligible(&(p.x.clone() - q.x.clone()), &sx)
        && S::negligible(&(p.y.clone() - q.y.clone()), &sy)
}
