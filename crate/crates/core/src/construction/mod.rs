//! The circle construction itself, implemented twice.
//!
//! The closed-form path evaluates canonical-frame coordinate formulas: the
//! triangle sits on the unit circumcircle with vertices given by
//! tangent-half-angle parameters and the target point at `(-k, 0)`. The
//! geometric path performs the same construction with frame-independent
//! primitives (second chord intersections, parallelogram fourth vertices,
//! midpoints) and therefore works for any triangle and any target point.
//! On exact canonical scenes the two paths agree identically, which is the
//! crate's central cross-check.

mod construct;
mod formulas;
mod scene;
mod transform;

pub use construct::{
    classic_hagge, construct, homothety_circle, orthocenter, ClassicHagge, ConstructionOutput,
    OutputFlags, PathKind,
};
pub use formulas::{
    chord_end, chord_line, chord_midpoint, midpoint_circle, special_circle,
    special_circle_misprint, special_point, vertex_from_param,
};
pub use scene::{AnyScene, ConstructError, Generator, Scene, TriangleParams, TriangleSpec};
pub use transform::{normalize_scene, normalizing_transform, Similarity};
