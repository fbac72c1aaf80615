//! Triangle-plane circle constructions with exact verification.
//!
//! Given a triangle, a target point P, and a generator point D, this crate
//! builds the circle through P whose center K and radius |OD| are chosen up
//! front (the special circle), together with the half-scale companion
//! circle on OD as diameter. The construction is implemented twice — once
//! through closed-form coordinates in the canonical frame and once through
//! frame-independent chord/parallelogram steps — and a circle-fitting
//! oracle cross-checks both against each other on exact rational scenes.
//!
//! Modules:
//! - [`scalar`], [`geom`]: arithmetic backends and plane primitives.
//! - [`construction`]: scenes, both construction paths, the classic
//!   orthocenter construction, and frame normalization.
//! - [`verify`]: seeded random scenes, invariant execution, reports.
//! - [`io`]: JSON encodings for scenes, construction outputs, and reports.

pub mod construction;
pub mod geom;
pub mod io;
pub mod scalar;
pub mod verify;

pub use construction::{
    classic_hagge, construct, homothety_circle, normalize_scene, AnyScene, ClassicHagge,
    ConstructError, ConstructionOutput, Generator, OutputFlags, PathKind, Scene, Similarity,
    TriangleParams, TriangleSpec,
};
pub use geom::{
    circle_through_3, collinear, fourth_vertex, line_through, midpoint, on_circle,
    reflect_across_line, second_intersection, Circle, GeomError, Line, Point,
};
pub use scalar::{rat, Backend, Rat, Scalar, REL_TOL};
pub use verify::{
    random_arbitrary_scene, random_scene, verify_arbitrary_batch, verify_arbitrary_scene,
    verify_batch, verify_scene, CheckRecord, FramePolicy, Report, ReportStatus, ScenePolicy,
    VerifyError, VerifyOptions,
};
