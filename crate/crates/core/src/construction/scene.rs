//! Scene descriptions: a triangle, the target point P, and the generator D
//! (or, equivalently, the desired circle center K).

use crate::geom::{collinear, GeomError, Point};
use crate::scalar::{Backend, Rat, Scalar};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("generator point coincides with a triangle vertex")]
    DIsVertex,
    #[error("closed-form path requires a canonical scene: {0}")]
    NonCanonicalForClosedForm(&'static str),
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("generator at the circumcenter yields a point circle")]
    DegeneratePointCircle,
    #[error("input construction is degenerate")]
    DegenerateInput,
    #[error("the three reflections are collinear; no circle through them")]
    CollinearReflections,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Tangent-half-angle parameters of the three vertices on the unit
/// circumcircle. The parametrization covers every unit-circle point except
/// `(0, -1)`, which would need a parameter at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> TriangleParams<S> {
    /// Parameters must be pairwise distinct (distinct vertices).
    pub fn new(a: S, b: S, c: S) -> Result<Self, ConstructError> {
        if a == b || b == c || a == c {
            return Err(ConstructError::DegenerateTriangle);
        }
        Ok(TriangleParams { a, b, c })
    }

    pub fn values(&self) -> [S; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn vertices(&self) -> [Point<S>; 3] {
        self.values()
            .map(|p| super::formulas::vertex_from_param(&p))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TriangleSpec<S> {
    Params(TriangleParams<S>),
    Vertices([Point<S>; 3]),
}

/// Either the generator point D or the desired circle center K; the two
/// determine each other through the parallelogram relation `K = P + D - O`.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator<S> {
    D(Point<S>),
    K(Point<S>),
}

impl<S: Scalar> Generator<S> {
    /// The generator point, given the target P and circumcenter O.
    pub fn resolve_d(&self, p: &Point<S>, o: &Point<S>) -> Point<S> {
        match self {
            Generator::D(d) => d.clone(),
            Generator::K(k) => k.clone() - p.clone() + o.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene<S> {
    pub triangle: TriangleSpec<S>,
    pub p: Point<S>,
    pub generator: Generator<S>,
}

impl<S: Scalar> Scene<S> {
    /// Canonical scene: unit circumcircle at the origin, `P = (-k, 0)`.
    pub fn canonical(params: TriangleParams<S>, k: S, generator: Generator<S>) -> Self {
        Scene {
            triangle: TriangleSpec::Params(params),
            p: Point::new(-k, S::zero()),
            generator,
        }
    }

    /// The three vertices; explicit ones must not be collinear.
    pub fn vertices(&self) -> Result<[Point<S>; 3], ConstructError> {
        match &self.triangle {
            TriangleSpec::Params(params) => Ok(params.vertices()),
            TriangleSpec::Vertices(vs) => {
                if vs[0] == vs[1]
                    || vs[1] == vs[2]
                    || vs[0] == vs[2]
                    || collinear(&vs[0], &vs[1], &vs[2])
                {
                    return Err(ConstructError::DegenerateTriangle);
                }
                Ok(vs.clone())
            }
        }
    }

    /// Vertex parameters for the closed-form path. Explicit vertices are
    /// accepted when they lie on the unit circle and none sits at `(0, -1)`
    /// (whose parameter would be infinite).
    pub fn params(&self) -> Result<TriangleParams<S>, ConstructError> {
        match &self.triangle {
            TriangleSpec::Params(params) => Ok(params.clone()),
            TriangleSpec::Vertices(vs) => {
                let mut ps = Vec::with_capacity(3);
                for v in vs {
                    let on_unit = v.norm_sq() - S::one();
                    if !S::negligible(&on_unit, &S::one()) {
                        return Err(ConstructError::NonCanonicalForClosedForm(
                            "vertices must lie on the unit circumcircle",
                        ));
                    }
                    let denom = S::one() + v.y.clone();
                    if S::negligible(&denom, &S::one()) {
                        return Err(ConstructError::NonCanonicalForClosedForm(
                            "vertex at (0, -1) has no finite parameter",
                        ));
                    }
                    ps.push(v.x.clone() / denom);
                }
                TriangleParams::new(ps[0].clone(), ps[1].clone(), ps[2].clone())
            }
        }
    }

    /// Distance parameter k of the canonical target `P = (-k, 0)`.
    pub fn canonical_k(&self) -> Result<S, ConstructError> {
        if !S::negligible(
            &self.p.y,
            &crate::scalar::max_abs(&[S::one(), self.p.x.clone()]),
        ) {
            return Err(ConstructError::NonCanonicalForClosedForm(
                "target point must lie on the x-axis",
            ));
        }
        Ok(-self.p.x.clone())
    }

    /// True when the circumcircle is the unit circle at the origin and P
    /// lies on the x-axis, so the closed-form path applies.
    pub fn is_canonical(&self) -> bool {
        self.params().is_ok() && self.canonical_k().is_ok()
    }
}

/// A scene under either backend; documents and CLI input resolve to this.
// Exact scenes dominate the size, but values of this type are boundary
// objects (parsed input, failure witnesses), not hot-path data.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum AnyScene {
    Exact(Scene<Rat>),
    Double(Scene<f64>),
}

impl AnyScene {
    pub fn backend(&self) -> Backend {
        match self {
            AnyScene::Exact(_) => Backend::Exact,
            AnyScene::Double(_) => Backend::Double,
        }
    }
}
